//! Byte-exact golden files for the LP writer.

use gp_core::{build_ilp, write_lp, IntervalOracle};

fn lp_for(spec: &str) -> String {
    let g = gp_core::GraphSpec::parse(spec).unwrap().build().unwrap();
    write_lp(&build_ilp(&IntervalOracle::from_graph(&g)))
}

#[test]
fn p3_matches_golden() {
    let text = lp_for("p3");
    assert_eq!(text, include_str!("golden/p3.lp"));
    assert!(text.contains("gp_0_2: x1 + 3 x0 + 3 x2 <= 6"));
}

#[test]
fn c4_matches_golden() {
    assert_eq!(lp_for("c4"), include_str!("golden/c4.lp"));
}

#[test]
fn q3_matches_golden() {
    assert_eq!(lp_for("q3"), include_str!("golden/q3.lp"));
}

#[test]
fn output_is_reproducible() {
    assert_eq!(lp_for("cay:9:1,3,6,8"), lp_for("cay:9:1,3,6,8"));
}
