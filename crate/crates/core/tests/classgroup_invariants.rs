use std::sync::Arc;

use purecubic_core::arith::is_cube_free;
use purecubic_core::classgroup::oracle::{class_number, OracleParams};
use purecubic_core::classgroup::{
    class_group, Certification, ClassGroupParams, FactorBase, OracleMode,
};
use purecubic_core::PureCubicField;

fn field(d: u64) -> Arc<PureCubicField> {
    Arc::new(PureCubicField::classify(d).unwrap())
}

#[test]
fn agrees_with_enumeration_oracle_up_to_20() {
    for d in (2..=20u64).filter(|&d| is_cube_free(d)) {
        let f = field(d);
        let oracle = class_number(&FactorBase::new(&f).unwrap(), &OracleParams::default())
            .unwrap()
            .expect("unit found for small d");
        let params = ClassGroupParams {
            oracle: OracleMode::Never,
            ..ClassGroupParams::default()
        };
        let cg = class_group(&f, &params).unwrap();
        assert_eq!(cg.h, oracle.h, "d = {d}");
        let certified = class_group(
            &f,
            &ClassGroupParams {
                oracle: OracleMode::Always,
                ..params
            },
        )
        .unwrap();
        assert_eq!(
            certified.certification,
            Certification::OracleConfirmed,
            "d = {d}"
        );
    }
}

#[test]
fn independent_of_seed_up_to_50() {
    for d in (2..=50u64).filter(|&d| is_cube_free(d)) {
        let f = field(d);
        let run = |seed| {
            let params = ClassGroupParams {
                seed,
                oracle: OracleMode::Never,
                ..ClassGroupParams::default()
            };
            class_group(&f, &params).unwrap()
        };
        let (x, y) = (run(1), run(0xdecaf));
        assert_eq!(x.divisors, y.divisors, "d = {d}");
    }
}
