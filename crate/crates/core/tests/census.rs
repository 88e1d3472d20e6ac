use veronese_core::census::{
    identity_suite, render_csv, render_json, reproduce_table, solid_duality_check, CensusConfig, TableId,
};
use veronese_core::lineclass::{find_rep_params, orbit_sizes_lines, representative_line, LineClassifier};
use veronese_core::pglinalg::{enumerate_lines, gaussian_binomial};
use veronese_core::systems::od4_of_line;
use veronese_core::{Geometry, LineOrbitLabel};

#[test]
fn t1_at_three_matches_every_row() {
    let geo = Geometry::new(3).unwrap();
    let r = reproduce_table(&geo, TableId::T1, &CensusConfig::default()).unwrap();
    assert!(r.pass);
    assert_eq!(r.rows.len(), 4);
    assert_eq!(r.rows[0].computed, vec![4, 42, 3, 72]);
}

#[test]
fn od2h_odd_at_three() {
    let geo = Geometry::new(3).unwrap();
    let r = reproduce_table(&geo, TableId::Od2hOdd, &CensusConfig::default()).unwrap();
    let bad: Vec<&str> = r.failures().map(|row| row.label.as_str()).collect();
    // the stored o12_1 row is not integral at q = 3; the computed row is
    // q^2(q+2), q(2q-1), q(2q+1), q^2
    assert_eq!(bad, vec!["o12_1"]);
    let row = r.rows.iter().find(|row| row.label == "o12_1").unwrap();
    assert_eq!(row.computed, vec![45, 15, 21, 9]);
    let total = r.rows.iter().find(|row| row.label == "total").unwrap();
    assert!(total.matches);
    assert_eq!(total.computed, vec![1210; 4]);
}

#[test]
fn o12_1_hyperplane_counts_by_flags() {
    // |o12_1| h_j / |H_j| gives the o12_1 cell of each hyperplane column
    for q in [3u32] {
        let geo = Geometry::new(q).unwrap();
        let ctx = geo.field();
        let qq = q as u64;
        let p = find_rep_params(ctx).unwrap();
        let h = od4_of_line(&geo, &representative_line(LineOrbitLabel::O12_1, &p, ctx).unwrap()).unwrap();
        let sizes = orbit_sizes_lines(&geo).unwrap();
        let size = sizes.iter().find(|s| s.0 == LineOrbitLabel::O12_1).unwrap().1;
        let hyper = veronese_core::systems::hyperplane_orbit_sizes(&geo);
        let cells: Vec<u64> = (0..4).map(|j| size * h[j] / hyper[j]).collect();
        assert_eq!(cells, vec![qq * qq * (qq + 2), qq * (2 * qq - 1), qq * (2 * qq + 1), qq * qq]);
    }
}

#[test]
fn t4_at_two() {
    let geo = Geometry::new(2).unwrap();
    let r = reproduce_table(&geo, TableId::T4, &CensusConfig::default()).unwrap();
    assert!(r.pass);
    assert_eq!(r.rows.len(), 15);
}

#[test]
fn solids_at_three_sum_to_forty() {
    let geo = Geometry::new(3).unwrap();
    let r = solid_duality_check(&geo).unwrap();
    assert!(r.pass);
    assert!(r.rows.iter().all(|row| row.computed.iter().sum::<u64>() == 40));
}

#[test]
fn solid_omega12_at_five() {
    let geo = Geometry::new(5).unwrap();
    let r = solid_duality_check(&geo).unwrap();
    let row = r.rows.iter().find(|row| row.label.starts_with("Omega12")).unwrap();
    assert!(row.matches);
}

#[test]
fn identities_at_three() {
    let geo = Geometry::new(3).unwrap();
    let r = identity_suite(&geo, &CensusConfig::default()).unwrap();
    assert!(r.pass, "{:?}", r.failures().collect::<Vec<_>>());
}

#[test]
fn identities_at_two_separation_clause() {
    // for even q the P1 and P2s squabs have equal double-line and
    // non-singular counts
    let geo = Geometry::new(2).unwrap();
    let r = identity_suite(&geo, &CensusConfig::default()).unwrap();
    let bad: Vec<&str> = r.failures().map(|row| row.label.as_str()).collect();
    assert_eq!(bad, vec!["squabs_double_lines_and_nonsingular"]);
}

#[test]
fn orbit_sizes_divide_group_order() {
    let geo = Geometry::new(3).unwrap();
    let sizes = orbit_sizes_lines(&geo).unwrap();
    assert_eq!(sizes.iter().map(|s| s.1).sum::<u64>(), 11011);
    assert!(sizes.iter().all(|s| 5616 % s.1 == 0));
}

#[test]
fn od0_equal_implies_od4_equal_at_two() {
    let geo = Geometry::new(2).unwrap();
    let ctx = geo.field();
    let cls = LineClassifier::new(&geo);
    let mut seen = std::collections::HashMap::new();
    let lines = enumerate_lines(ctx, &veronese_core::Subspace::whole(5)).unwrap();
    assert_eq!(lines.len() as u64, gaussian_binomial(6, 2, 2));
    for l in &lines {
        let (_, od0) = cls.classify_with_od0(l).unwrap();
        let od4 = od4_of_line(&geo, l).unwrap();
        assert_eq!(*seen.entry(od0).or_insert(od4), od4);
    }
}

#[test]
fn reports_are_deterministic() {
    let geo = Geometry::new(3).unwrap();
    let cfg = CensusConfig::default();
    let a = reproduce_table(&geo, TableId::T3, &cfg).unwrap();
    let one = CensusConfig { workers: Some(1), ..CensusConfig::default() };
    let b = one.install(|| reproduce_table(&geo, TableId::T3, &one).unwrap());
    assert_eq!(render_json(&[a.clone()]), render_json(&[b]));
    assert!(render_csv(&[a]).unwrap().starts_with("table,q,label"));
}
