use stabgate::engine::{find_script, parse_lambda, run_script, Quadruple, RunOptions, Verdict};

#[test]
fn a5_wedge_square_certifies() {
    let s = find_script("A5:w2:any:4").unwrap();
    let r = run_script(&s, &RunOptions::default()).unwrap();
    assert_eq!(r.verdict, Verdict::Certified);
    assert!(r.mismatches.is_empty());
    let last = r.stages.iter().filter(|st| st.psi == "A4").last().unwrap();
    assert_eq!((last.b, last.b - last.margin), (36, 30));
}

#[test]
fn reports_are_deterministic() {
    let s = find_script("E6:w1").unwrap();
    let a = run_script(&s, &RunOptions::default()).unwrap().to_json();
    let b = run_script(&s, &RunOptions::default()).unwrap().to_json();
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["verdict"]["status"], "certified-with-trusted");
    assert!(v["stages"][0]["B"].is_i64());
}

#[test]
fn replacing_k_skips_the_b_comparison_but_still_runs() {
    let s = find_script("A5:w2").unwrap();
    let r = run_script(&s, &RunOptions { k: Some(5), ..Default::default() }).unwrap();
    assert_eq!(r.quadruple.k, 5);
}

#[test]
fn quadruple_parsing() {
    let q = Quadruple::parse("A3:w1+w2:3:2").unwrap();
    assert_eq!(q.lambda, vec![1, 1, 0]);
    assert_eq!((q.p.as_str(), q.k), ("3", 2));
    assert_eq!(parse_lambda("2w1", 4).unwrap(), vec![2, 0, 0, 0]);
    assert_eq!(parse_lambda("0,1,0", 3).unwrap(), vec![0, 1, 0]);
    assert!(parse_lambda("w5", 4).is_err());
    assert!(Quadruple::parse("A5").is_err());
    assert!(Quadruple::parse("A5:w2:banana:4").is_err());
}

#[test]
fn missing_script_is_a_data_error() {
    assert!(matches!(find_script("A9:w2:any:4"), Err(stabgate::Error::DataMissing(_))));
}
