//! Table reproduction, identity suites and report rendering.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cubic::secant_link;
use crate::error::{Error, Result};
use crate::formula::Rational;
use crate::geometry::Geometry;
use crate::gf::{Elem, Parity};
use crate::lineclass::{find_rep_params, point_od, representative_line, LineClassifier, LineOrbitLabel, RepParams};
use crate::pglinalg::{enumerate_lines, enumerate_points, gaussian_binomial, Matrix, Subspace};
use crate::systems::{od1_of_hyperplane, od4_of_line, od4_of_point, representative_forms};
use crate::tabledata::table;
use crate::veronese::{delta, sym_rank, PointOrbitLabel, SymPoint};

pub const WORKERS_ENV: &str = "VERONESE_WORKERS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TableId {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    #[serde(rename = "OD2H_odd")]
    Od2hOdd,
    #[serde(rename = "OD2H_even")]
    Od2hEven,
    #[serde(rename = "T7check")]
    T7Check,
}

impl TableId {
    pub const ALL: [TableId; 9] = [
        TableId::T1,
        TableId::T2,
        TableId::T3,
        TableId::T4,
        TableId::T5,
        TableId::T6,
        TableId::Od2hOdd,
        TableId::Od2hEven,
        TableId::T7Check,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TableId::T1 => "T1",
            TableId::T2 => "T2",
            TableId::T3 => "T3",
            TableId::T4 => "T4",
            TableId::T5 => "T5",
            TableId::T6 => "T6",
            TableId::Od2hOdd => "OD2H_odd",
            TableId::Od2hEven => "OD2H_even",
            TableId::T7Check => "T7check",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.name().eq_ignore_ascii_case(s))
    }

    pub fn parity(self) -> Parity {
        match self {
            TableId::T1 | TableId::T3 | TableId::T5 | TableId::Od2hOdd | TableId::T7Check => Parity::Odd,
            _ => Parity::Even,
        }
    }

    /// Tables that apply to a field of the given parity.
    pub fn for_parity(p: Parity) -> Vec<TableId> {
        Self::ALL.into_iter().filter(|t| t.parity() == p).collect()
    }
}

impl std::fmt::Display for TableId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub label: String,
    pub expected: Vec<String>,
    pub computed: Vec<u64>,
    #[serde(rename = "match")]
    pub matches: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl ReportRow {
    fn new(label: impl Into<String>, expected: &[Rational], computed: Vec<u64>) -> Self {
        let matches = expected.len() == computed.len()
            && expected.iter().zip(&computed).all(|(e, &c)| e.is_integer() && *e == Rational::from_integer(c as i128));
        ReportRow {
            label: label.into(),
            expected: expected.iter().map(|e| e.to_string()).collect(),
            computed,
            matches,
            detail: None,
        }
    }

    fn counts(label: impl Into<String>, expected: Vec<u64>, computed: Vec<u64>) -> Self {
        let e: Vec<Rational> = expected.iter().map(|&x| Rational::from_integer(x as i128)).collect();
        Self::new(label, &e, computed)
    }

    fn with_detail(mut self, d: Option<String>) -> Self {
        if d.is_some() {
            self.matches = false;
        }
        self.detail = d;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub id: String,
    pub title: String,
    pub q: u32,
    pub parity: Parity,
    pub mode: &'static str,
    pub columns: Vec<String>,
    pub rows: Vec<ReportRow>,
    pub pass: bool,
}

impl TableReport {
    fn new(id: &str, title: &str, geo: &Geometry, mode: &'static str, columns: Vec<String>, rows: Vec<ReportRow>) -> Self {
        let pass = rows.iter().all(|r| r.matches);
        TableReport {
            id: id.to_string(),
            title: title.to_string(),
            q: geo.q(),
            parity: geo.field().parity(),
            mode,
            columns,
            rows,
            pass,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(|r| !r.matches)
    }
}

/// Sweep limits; larger q fall back to representatives only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct CensusConfig {
    pub odd_q: Vec<u32>,
    pub even_q: Vec<u32>,
    /// Largest q for which every point is checked against T1/T2.
    pub exhaustive_points_max_q: u32,
    /// Largest q for which every line of PG(5, q) is swept.
    pub exhaustive_lines_max_q: u32,
    /// Largest q for which OD1 of a hyperplane is computed.
    pub od1_max_q: u32,
    pub workers: Option<usize>,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig {
            odd_q: vec![3, 5, 7, 9],
            even_q: vec![2, 4, 8],
            exhaustive_points_max_q: 4,
            exhaustive_lines_max_q: 5,
            od1_max_q: 4,
            workers: None,
        }
    }
}

impl CensusConfig {
    pub fn from_toml(s: &str) -> Result<Self> {
        toml::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let s = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_toml(&s)
    }

    /// Worker count from the environment, then the config.
    pub fn worker_count(&self) -> Option<usize> {
        std::env::var(WORKERS_ENV).ok().and_then(|v| v.parse().ok()).filter(|&n| n > 0).or(self.workers)
    }

    /// Runs `f` on a pool sized by [`worker_count`](Self::worker_count).
    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match self.worker_count() {
            Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build().expect("thread pool").install(f),
            None => f(),
        }
    }
}

fn expected_row(id: &str, label: &str, q: u32) -> Result<Vec<Rational>> {
    table(id).eval_row(label, q as u64)
}

fn check_parity(geo: &Geometry, id: TableId) -> Result<()> {
    let p = geo.field().parity();
    if id.parity() != p {
        return Err(Error::ParityMismatch { label: id.name().into(), parity: p.as_str() });
    }
    Ok(())
}

fn first_point_per_label(geo: &Geometry) -> HashMap<PointOrbitLabel, Vec<Elem>> {
    let mut out = HashMap::new();
    for y in enumerate_points(5, geo.field()) {
        out.entry(geo.point_label(&y)).or_insert(y);
        if out.len() == 4 {
            break;
        }
    }
    out
}

fn point_table(geo: &Geometry, id: TableId, cfg: &CensusConfig) -> Result<TableReport> {
    let ctx = geo.field();
    let spec = table(id.name());
    let exhaustive = geo.q() <= cfg.exhaustive_points_max_q;
    let reps = first_point_per_label(geo);
    let mut expected: HashMap<PointOrbitLabel, Vec<Rational>> = HashMap::new();
    for l in PointOrbitLabel::for_parity(ctx.parity()) {
        expected.insert(l, expected_row(id.name(), l.name(), geo.q())?);
    }
    // first offending point per label
    let mut bad: HashMap<PointOrbitLabel, String> = HashMap::new();
    if exhaustive {
        let pts: Vec<Vec<Elem>> = enumerate_points(5, ctx).collect();
        let found: Vec<(PointOrbitLabel, Vec<Elem>, [u64; 4])> = pts
            .par_iter()
            .filter_map(|y| {
                let l = geo.point_label(y);
                let od = od4_of_point(geo, &SymPoint::from_slice(ctx, y).unwrap());
                let ok = expected[&l].iter().zip(od).all(|(e, c)| *e == Rational::from_integer(c as i128));
                (!ok).then(|| (l, y.clone(), od))
            })
            .collect();
        for (l, y, od) in found {
            bad.entry(l).or_insert_with(|| format!("point {y:?} has OD4 {od:?}"));
        }
    }
    let mut rows = Vec::new();
    for l in PointOrbitLabel::for_parity(ctx.parity()) {
        let y = &reps[&l];
        let od = od4_of_point(geo, &SymPoint::from_slice(ctx, y).unwrap());
        rows.push(ReportRow::new(l.name(), &expected[&l], od.to_vec()).with_detail(bad.remove(&l)));
    }
    let mode = if exhaustive { "exhaustive" } else { "representatives" };
    Ok(TableReport::new(id.name(), &spec.title, geo, mode, spec.columns.clone(), rows))
}

fn line_table(geo: &Geometry, id: TableId, p: &RepParams) -> Result<TableReport> {
    let ctx = geo.field();
    let spec = table(id.name());
    let mut rows = Vec::new();
    for &l in LineOrbitLabel::for_parity(ctx.parity()) {
        let line = representative_line(l, p, ctx)?;
        let computed = match id {
            TableId::T3 | TableId::T4 => od4_of_line(geo, &line)?.to_vec(),
            _ => point_od(geo, &line).to_vec(),
        };
        rows.push(ReportRow::new(l.name(), &expected_row(id.name(), l.name(), geo.q())?, computed));
    }
    Ok(TableReport::new(id.name(), &spec.title, geo, "representatives", spec.columns.clone(), rows))
}

/// OD1 of the first hyperplane of every orbit, laid out like the table: one
/// row per line orbit, one column per hyperplane orbit, then a total row.
fn od2h_table(geo: &Geometry, id: TableId, cfg: &CensusConfig) -> Result<TableReport> {
    let ctx = geo.field();
    if geo.q() > cfg.od1_max_q {
        return Err(Error::OracleBound { q: geo.q(), bound: cfg.od1_max_q });
    }
    let spec = table(id.name());
    let cls = LineClassifier::new(geo);
    let mut od1 = Vec::new();
    for f in representative_forms(geo) {
        od1.push(od1_of_hyperplane(&cls, &delta(ctx, &f))?);
    }
    let mut rows = Vec::new();
    for (i, &l) in LineOrbitLabel::for_parity(ctx.parity()).iter().enumerate() {
        let computed = od1.iter().map(|v| v[i]).collect();
        rows.push(ReportRow::new(l.name(), &expected_row(id.name(), l.name(), geo.q())?, computed));
    }
    let lines = gaussian_binomial(5, 2, geo.q() as u64);
    rows.push(ReportRow::counts("total", vec![lines; 4], od1.iter().map(|v| v.iter().sum()).collect()));
    Ok(TableReport::new(id.name(), &spec.title, geo, "representatives", spec.columns.clone(), rows))
}

pub fn reproduce_table(geo: &Geometry, id: TableId, cfg: &CensusConfig) -> Result<TableReport> {
    check_parity(geo, id)?;
    let p = find_rep_params(geo.field())?;
    match id {
        TableId::T1 | TableId::T2 => point_table(geo, id, cfg),
        TableId::T3 | TableId::T4 | TableId::T5 | TableId::T6 => line_table(geo, id, &p),
        TableId::Od2hOdd | TableId::Od2hEven => od2h_table(geo, id, cfg),
        TableId::T7Check => solid_duality_check(geo),
    }
}

/// Solid orbits for odd q, named after the line orbit they pair with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SolidOrbitLabel {
    S5,
    S6,
    S8_1,
    S8_2,
    S9,
    S10,
    S12,
    S13_1,
    S13_2,
    S14_1,
    S14_2,
    S15_1,
    S15_2,
    S16,
    S17,
}

impl SolidOrbitLabel {
    pub const ALL: [SolidOrbitLabel; 15] = {
        use SolidOrbitLabel::*;
        [S5, S6, S8_1, S8_2, S9, S10, S12, S13_1, S13_2, S14_1, S14_2, S15_1, S15_2, S16, S17]
    };

    pub fn name(self) -> &'static str {
        use SolidOrbitLabel::*;
        match self {
            S5 => "Omega5",
            S6 => "Omega6",
            S8_1 => "Omega8_1",
            S8_2 => "Omega8_2",
            S9 => "Omega9",
            S10 => "Omega10",
            S12 => "Omega12",
            S13_1 => "Omega13_1",
            S13_2 => "Omega13_2",
            S14_1 => "Omega14_1",
            S14_2 => "Omega14_2",
            S15_1 => "Omega15_1",
            S15_2 => "Omega15_2",
            S16 => "Omega16",
            S17 => "Omega17",
        }
    }

    /// The line orbit whose web has the same distribution. The unsuffixed
    /// solids pair with the `_1` line orbits.
    pub fn paired_line(self) -> LineOrbitLabel {
        use LineOrbitLabel as L;
        use SolidOrbitLabel::*;
        match self {
            S5 => L::O5,
            S6 => L::O6,
            S8_1 => L::O8_1,
            S8_2 => L::O8_2,
            S9 => L::O9,
            S10 => L::O10,
            S12 => L::O12_1,
            S13_1 => L::O13_1,
            S13_2 => L::O13_2,
            S14_1 => L::O14_1,
            S14_2 => L::O14_2,
            S15_1 => L::O15_1,
            S15_2 => L::O15_2,
            S16 => L::O16_1,
            S17 => L::O17,
        }
    }
}

/// Representative solid of PG(5, q), q odd, as four spanning points.
pub fn solid_representative(geo: &Geometry, label: SolidOrbitLabel, p: &RepParams) -> Result<Subspace> {
    use SolidOrbitLabel::*;
    let ctx = geo.field();
    if !ctx.is_odd() {
        return Err(Error::ParityMismatch { label: label.name().into(), parity: ctx.parity().as_str() });
    }
    let d = p.delta;
    let m1 = ctx.neg(1);
    let v = |terms: &[(Elem, usize)]| -> [Elem; 6] {
        let mut out = [0 as Elem; 6];
        for &(c, i) in terms {
            out[i] = ctx.add(out[i], c);
        }
        out
    };
    let e = |i: usize| v(&[(1, i)]);
    let rows: [[Elem; 6]; 4] = match label {
        S5 => [e(1), e(2), e(4), e(5)],
        S6 => [e(2), e(3), e(4), e(5)],
        S8_1 => [e(1), e(2), v(&[(1, 3), (1, 5)]), e(4)],
        S8_2 => [e(1), e(2), v(&[(d, 3), (1, 5)]), e(4)],
        S9 => [e(1), v(&[(1, 2), (m1, 3)]), e(4), e(5)],
        S10 => {
            let (u, w) = (p.u[0], p.v[0]);
            [v(&[(1, 0), (ctx.mul(u, w), 1), (ctx.neg(w), 3)]), e(2), e(4), e(5)]
        }
        S12 => [e(0), e(2), e(3), e(5)],
        S13_1 => [e(0), e(2), v(&[(1, 3), (1, 5)]), e(4)],
        S13_2 => [e(0), e(2), v(&[(d, 3), (1, 5)]), e(4)],
        S14_1 => [v(&[(1, 0), (1, 3), (1, 5)]), e(1), e(2), e(4)],
        S14_2 => [v(&[(d, 0), (1, 3), (d, 5)]), e(1), e(2), e(4)],
        S15_1 | S15_2 => {
            let i = if label == S15_1 { 1 } else { 2 };
            let (u, w) = (p.u[i], p.v[i]);
            [v(&[(1, 0), (ctx.neg(w), 3), (ctx.mul(u, w), 5)]), v(&[(1, 1), (m1, 5)]), e(2), e(4)]
        }
        S16 => [e(0), e(1), v(&[(1, 2), (m1, 3)]), e(5)],
        S17 => {
            let (a, b, g) = (p.alpha, p.beta, p.gamma);
            [
                v(&[(1, 1), (m1, 5)]),
                e(2),
                v(&[(ctx.mul(a, g), 0), (1, 3), (ctx.neg(b), 5)]),
                v(&[(ctx.neg(a), 0), (1, 4)]),
            ]
        }
    };
    Subspace::from_independent(ctx, &Matrix::from_rows(&rows)?)
}

/// OD0 of each representative solid against OD4 of its paired line orbit,
/// labels compared in the order P1~H1, P2e~H2r, P2i~H2i, P3~H3.
pub fn solid_duality_check(geo: &Geometry) -> Result<TableReport> {
    let ctx = geo.field();
    if !ctx.is_odd() {
        return Err(Error::ParityMismatch { label: "T7check".into(), parity: ctx.parity().as_str() });
    }
    let p = find_rep_params(ctx)?;
    let mut rows = Vec::new();
    for s in SolidOrbitLabel::ALL {
        let solid = solid_representative(geo, s, &p)?;
        let mut od = [0u64; 4];
        for y in solid.points(ctx) {
            od[geo.point_label(&y).index()] += 1;
        }
        let line = representative_line(s.paired_line(), &p, ctx)?;
        let h = od4_of_line(geo, &line)?;
        let h: Vec<Rational> = h.iter().map(|&x| Rational::from_integer(x as i128)).collect();
        rows.push(ReportRow::new(format!("{}~{}", s.name(), s.paired_line()), &h, od.to_vec()));
    }
    Ok(TableReport::new(
        "T7check",
        "Point-orbit distributions of solids against hyperplane-orbit distributions of lines, q odd",
        geo,
        "representatives",
        vec!["P1~H1".into(), "P2e~H2r".into(), "P2i~H2i".into(), "P3~H3".into()],
        rows,
    ))
}

#[derive(Debug, Clone, Copy)]
struct PointStats {
    label: PointOrbitLabel,
    rank: usize,
    od4: [u64; 4],
}

#[derive(Debug, Clone, Copy)]
struct LineStats {
    od0: [u64; 4],
    od4: [u64; 4],
    low_rank: u64,
    cubic_points: u64,
}

/// Distinct statistic values against distinct (statistic, label) pairs; both
/// equal the label count exactly when the statistic separates the labels.
fn separation_row<K: Ord + Copy>(name: &str, items: impl Iterator<Item = (K, PointOrbitLabel)>, labels: u64) -> ReportRow {
    let pairs: BTreeSet<(K, PointOrbitLabel)> = items.collect();
    let keys: BTreeSet<K> = pairs.iter().map(|p| p.0).collect();
    ReportRow::counts(name, vec![labels, labels], vec![keys.len() as u64, pairs.len() as u64])
}

/// Identity and characterisation clauses for points and lines at one q.
pub fn identity_suite(geo: &Geometry, cfg: &CensusConfig) -> Result<TableReport> {
    let ctx = geo.field();
    let q = geo.q() as u64;
    let pts: Vec<Vec<Elem>> = enumerate_points(5, ctx).collect();
    let stats: Vec<PointStats> = pts
        .par_iter()
        .map(|y| {
            let sp = SymPoint::from_slice(ctx, y).unwrap();
            PointStats { label: geo.point_label(y), rank: sp.rank(ctx), od4: od4_of_point(geo, &sp) }
        })
        .collect();
    let n = stats.len() as u64;
    let mut rows = Vec::new();
    let count = |f: &dyn Fn(&PointStats) -> bool| stats.iter().filter(|s| f(s)).count() as u64;
    let q4 = q.pow(4);
    rows.push(ReportRow::counts(
        "squabs_nonsingular_count",
        vec![n],
        vec![count(&|s| s.od4[3] == if s.rank == 3 { q4 } else { q4 - q * q })],
    ));
    rows.push(separation_row("squabs_double_lines_and_nonsingular", stats.iter().map(|s| ((s.od4[0], s.od4[3]), s.label)), 4));
    rows.push(separation_row("squabs_rank2_double_lines", stats.iter().filter(|s| s.rank == 2).map(|s| (s.od4[0], s.label)), 2));
    rows.push(separation_row("squabs_not_rank2_nonsingular", stats.iter().filter(|s| s.rank != 2).map(|s| (s.od4[3], s.label)), 2));
    rows.push(ReportRow::counts(
        "squabs_double_line_count",
        vec![n],
        vec![count(&|s| s.rank == 2 || s.od4[0] == q + 1)],
    ));
    let secant = count(&|s| s.rank <= 2);
    rows.push(ReportRow::counts("secant_points_h3", vec![secant], vec![count(&|s| s.rank <= 2 && s.od4[3] == q4 - q * q)]));
    for s in &stats {
        if s.od4.iter().sum::<u64>() != crate::pglinalg::point_count(4, geo.q()) {
            return Err(Error::Inconsistent(format!("OD4 sum of a {} point", s.label)));
        }
    }

    let exhaustive = geo.q() <= cfg.exhaustive_lines_max_q;
    let lines: Vec<Subspace> = if exhaustive {
        enumerate_lines(ctx, &Subspace::whole(5))?
    } else {
        let p = find_rep_params(ctx)?;
        LineOrbitLabel::for_parity(ctx.parity()).iter().map(|&l| representative_line(l, &p, ctx)).collect::<Result<_>>()?
    };
    let lstats: Vec<LineStats> = lines
        .par_iter()
        .map(|l| -> Result<LineStats> {
            let od0 = point_od(geo, l);
            let low_rank =
                l.points(ctx).iter().filter(|y| sym_rank(ctx, &(*y).clone().try_into().unwrap()) <= 2).count() as u64;
            let (_, cubic_points) = secant_link(ctx, l)?;
            Ok(LineStats { od0, od4: od4_of_line(geo, l)?, low_rank, cubic_points })
        })
        .collect::<Result<_>>()?;
    let m = lstats.len() as u64;
    let od0s: BTreeSet<[u64; 4]> = lstats.iter().map(|s| s.od0).collect();
    let od04: BTreeSet<([u64; 4], [u64; 4])> = lstats.iter().map(|s| (s.od0, s.od4)).collect();
    rows.push(ReportRow::counts("lines_od0_determines_od4", vec![od0s.len() as u64], vec![od04.len() as u64]));
    let allowed: Vec<i64> = vec![-(q as i64), -2, -1, 0, 1];
    let webs3 = lstats
        .iter()
        .filter(|s| {
            let i = (q + 1 - s.low_rank) as i64 - q as i64;
            allowed.contains(&i) && s.od4[3] as i64 == q as i64 * (q as i64 * q as i64 + i)
        })
        .count() as u64;
    rows.push(ReportRow::counts("lines_h3_from_rank3_points", vec![m], vec![webs3]));
    let mut by_low: BTreeMap<u64, BTreeSet<u64>> = BTreeMap::new();
    for s in &lstats {
        by_low.entry(s.low_rank).or_default().insert(s.od4[0] + s.od4[1] + s.od4[2]);
    }
    let det = by_low.values().filter(|v| v.len() == 1).count() as u64;
    rows.push(ReportRow::counts("lines_secant_points_determine_singular", vec![by_low.len() as u64], vec![det]));
    let webs2 = lstats
        .iter()
        .filter(|s| s.cubic_points == q * q + s.low_rank * q + 1 && [0, 1, 2, 3, q + 1].contains(&s.low_rank))
        .count() as u64;
    rows.push(ReportRow::counts("lines_cubic_count", vec![m], vec![webs2]));
    let singular = lstats.iter().filter(|s| s.cubic_points == s.od4[0] + s.od4[1] + s.od4[2]).count() as u64;
    rows.push(ReportRow::counts("lines_cubic_equals_singular", vec![m], vec![singular]));
    let mode = if exhaustive { "exhaustive" } else { "points exhaustive, line representatives" };
    Ok(TableReport::new("identities", "Identity checks", geo, mode, vec!["objects".into(), "passing".into()], rows))
}

pub fn render_json(reports: &[TableReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize")
}

pub fn render_csv(reports: &[TableReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["table", "q", "label", "expected", "computed", "match", "detail"])
        .map_err(|e| Error::Parse(e.to_string()))?;
    for r in reports {
        for row in &r.rows {
            let computed: Vec<String> = row.computed.iter().map(u64::to_string).collect();
            w.write_record([
                r.id.as_str(),
                &r.q.to_string(),
                &row.label,
                &row.expected.join(" "),
                &computed.join(" "),
                if row.matches { "true" } else { "false" },
                row.detail.as_deref().unwrap_or(""),
            ])
            .map_err(|e| Error::Parse(e.to_string()))?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("utf8"))
}

pub fn render_markdown(reports: &[TableReport]) -> String {
    let mut s = String::new();
    for r in reports {
        s.push_str(&format!("## {} (q = {}): {}\n\n", r.id, r.q, if r.pass { "PASS" } else { "FAIL" }));
        s.push_str(&format!("{}, {}\n\n", r.title, r.mode));
        s.push_str(&format!("| label | expected [{}] | computed | match |\n|---|---|---|---|\n", r.columns.join(", ")));
        for row in &r.rows {
            let computed: Vec<String> = row.computed.iter().map(u64::to_string).collect();
            s.push_str(&format!(
                "| {} | {} | {} | {} |\n",
                row.label,
                row.expected.join(", "),
                computed.join(", "),
                if row.matches { "yes" } else { "no" }
            ));
        }
        s.push('\n');
    }
    s
}
