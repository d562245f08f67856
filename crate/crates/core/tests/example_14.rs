use octorb::field::PrimeField;
use octorb::morphisms::{complete_involution_14, is_antiautomorphism, MorphismError, MorphismKind, FORCED_14};
use octorb::octonion::SplitOctonions;

#[test]
fn single_antiautomorphic_completion_over_f2_and_f3() {
    for p in [2, 3] {
        let o = SplitOctonions::new(PrimeField::new(p).unwrap());
        let found = complete_involution_14(&o, 100_000_000).unwrap();
        assert_eq!(found.len(), 1, "F{p}");
        let m = &found[0];
        assert_eq!(m.kind, MorphismKind::Anti);
        assert!(is_antiautomorphism(&o, &m.map));
        assert!(m.map.compose(&m.map).is_identity());
        for (src, dst) in FORCED_14 {
            assert_eq!(m.apply(&o.basis(src)), o.basis(dst));
        }
    }
}

#[test]
fn completion_over_f5_exceeds_the_cap() {
    let o = SplitOctonions::new(PrimeField::new(5).unwrap());
    let err = complete_involution_14(&o, 100_000_000).unwrap_err();
    assert!(matches!(err, MorphismError::CapExceeded { size, .. } if size == 5u128.pow(16)));
}
