use proptest::prelude::*;
use riesz::report::{Comparison, VerificationReport};

fn value() -> impl Strategy<Value = f64> {
    prop_oneof![
        8 => -1e6f64..1e6,
        1 => Just(f64::NAN),
        1 => Just(f64::INFINITY),
    ]
}

proptest! {
    #[test]
    fn pass_iff_within_threshold(stat in value(), thr in -1e6f64..1e6, above in any::<bool>()) {
        let cmp = if above { Comparison::Above } else { Comparison::Below };
        let r = VerificationReport::new("x", stat, thr, cmp, 1);
        let within = if above { stat > thr } else { stat < thr };
        prop_assert_eq!(r.pass, within);
    }

    #[test]
    fn json_line_parses_and_matches(stat in -1e6f64..1e6, thr in 0.0f64..1e6, size in any::<u64>()) {
        let r = VerificationReport::new("check", stat, thr, Comparison::Below, size).with_detail("a \"b\", c");
        let v: serde_json::Value = serde_json::from_str(&r.to_json_line(false)).unwrap();
        prop_assert_eq!(v["statistic"].as_f64().unwrap().to_bits(), stat.to_bits());
        prop_assert_eq!(v["size"].as_u64().unwrap(), size);
        prop_assert_eq!(v["pass"].as_bool().unwrap(), r.pass);
        prop_assert_eq!(v["detail"].as_str().unwrap(), "a \"b\", c");
        prop_assert!(v.get("runtime_s").is_none());
    }

    #[test]
    fn csv_row_has_header_arity(stat in value(), detail in "[a-z,\" ]{0,12}") {
        let r = VerificationReport::new("laplace[beta=1,m=2]", stat, 1.0, Comparison::Below, 3).with_detail(detail);
        let row = r.to_csv_row(false);
        let mut fields = 0;
        let mut quoted = false;
        for c in row.chars() {
            match c {
                '"' => quoted = !quoted,
                ',' if !quoted => fields += 1,
                _ => {}
            }
        }
        prop_assert_eq!(fields + 1, VerificationReport::csv_header(false).split(',').count());
    }
}

#[test]
fn errored_reports_fail() {
    let r = VerificationReport::errored("check", "boom");
    assert!(!r.pass);
    assert!(r.detail.contains("boom"));
}
