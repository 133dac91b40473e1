use purecubic_core::galoismodel::{
    enumerate_models, evaluate_claim, full_report, ClaimReport, Constraints,
};

#[test]
fn report_round_trips_through_json() {
    let r = full_report(&Constraints::default());
    let s = serde_json::to_string(&r).unwrap();
    let back: ClaimReport = serde_json::from_str(&s).unwrap();
    assert_eq!(back, r);
}

#[test]
fn enumeration_is_deterministic() {
    assert_eq!(
        enumerate_models(&Constraints::default()),
        enumerate_models(&Constraints::default())
    );
}

#[test]
fn relaxed_reports_are_total_and_witnessed() {
    let full = full_report(&Constraints::default());
    let none = full_report(&Constraints::none());
    assert!(none.models > full.models);
    assert_eq!(none.claims.len(), full.claims.len());
    assert_eq!(none.recheck_failures, 0);
    for c in &none.claims {
        assert!(
            c.holding_witness.is_some() || c.failing_witness.is_some(),
            "{}",
            c.id
        );
        if let Some(w) = c.failing_witness {
            assert_eq!(evaluate_claim(&c.id, &w), Some(false), "{}", c.id);
        }
    }
}

#[test]
fn each_toggle_only_enlarges_the_model_set() {
    let base = enumerate_models(&Constraints::default());
    let toggles: [fn(&mut Constraints); 6] = [
        |c| c.orders = false,
        |c| c.dihedral = false,
        |c| c.norm_kills = false,
        |c| c.ambiguous_order = false,
        |c| c.eigen_orders = false,
        |c| c.ambiguous_plus = false,
    ];
    for t in toggles {
        let mut c = Constraints::default();
        t(&mut c);
        let relaxed = enumerate_models(&c);
        assert!(base.iter().all(|m| relaxed.contains(m)));
    }
}
