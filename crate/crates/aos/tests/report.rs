use aos::{verify_case, Outcome, ReportDocument};
use aos_core::catalog::{instantiate, list_cases, Overrides, RunOptions};
use aos_core::spaces::GramMode;
use proptest::prelude::*;

fn doc(idx: usize, n: usize, seed: u64) -> ReportDocument {
    let cases = list_cases();
    let case = instantiate(cases[idx % cases.len()].id, &Overrides::new()).unwrap();
    verify_case(&case, &RunOptions { n, tol: 1e-10, mode: GramMode::Closed, seed })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn documents_round_trip(idx in 0usize..26, n in 1usize..12, seed in any::<u64>()) {
        let d = doc(idx, n, seed);
        let back = ReportDocument::from_json(&d.to_json()).unwrap();
        prop_assert_eq!(&back, &d);
        prop_assert_eq!(back.body_json(), d.body_json());
        prop_assert!(!d.body_json().contains("timings"));
    }

    #[test]
    fn failure_means_margin_below_budget(idx in 0usize..26, n in 1usize..12, seed in any::<u64>()) {
        let d = doc(idx, n, seed);
        for i in &d.inequalities {
            prop_assert_eq!(i.status == Outcome::Fail, i.margin < -i.budget, "{} {}", d.case_id, i.name);
        }
        if d.error.is_none() {
            let worst = d.inequalities.iter().map(|i| i.status).max().unwrap_or(Outcome::Pass);
            prop_assert!(d.status >= worst);
        }
    }
}
