//! The fifteen line orbits of PG(5, q): representatives, point-orbit
//! distributions and the classifier.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::conics::{mul_linear, TernaryForm};
use crate::error::{Error, Result};
use crate::formula::eval_count;
use crate::geometry::Geometry;
use crate::gf::{Elem, FieldCtx, Parity};
use crate::pglinalg::{dot, enumerate_lines, Matrix, Subspace};
use crate::tabledata::table;
use crate::veronese::{sym_matrix, sym_rank, PointOrbitLabel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LineOrbitLabel {
    O5,
    O6,
    O8_1,
    O8_2,
    O8_3,
    O9,
    O10,
    O12_1,
    O12_3,
    O13_1,
    O13_2,
    O13_3,
    O14_1,
    O14_2,
    O15_1,
    O15_2,
    O16_1,
    O16_3,
    O17,
}

use LineOrbitLabel::*;

impl LineOrbitLabel {
    pub const ALL: [LineOrbitLabel; 19] = [
        O5, O6, O8_1, O8_2, O8_3, O9, O10, O12_1, O12_3, O13_1, O13_2, O13_3, O14_1, O14_2, O15_1, O15_2, O16_1,
        O16_3, O17,
    ];
    pub const ODD: [LineOrbitLabel; 15] =
        [O5, O6, O8_1, O8_2, O9, O10, O12_1, O13_1, O13_2, O14_1, O14_2, O15_1, O15_2, O16_1, O17];
    pub const EVEN: [LineOrbitLabel; 15] =
        [O5, O6, O8_1, O8_3, O9, O10, O12_1, O12_3, O13_1, O13_3, O14_1, O15_1, O16_1, O16_3, O17];

    pub fn for_parity(p: Parity) -> &'static [LineOrbitLabel; 15] {
        match p {
            Parity::Odd => &Self::ODD,
            Parity::Even => &Self::EVEN,
        }
    }

    pub fn valid_for(self, p: Parity) -> bool {
        Self::for_parity(p).contains(&self)
    }

    /// Position in an OD1 vector of the given parity.
    pub fn position(self, p: Parity) -> Option<usize> {
        Self::for_parity(p).iter().position(|&l| l == self)
    }

    pub fn name(self) -> &'static str {
        match self {
            O5 => "o5",
            O6 => "o6",
            O8_1 => "o8_1",
            O8_2 => "o8_2",
            O8_3 => "o8_3",
            O9 => "o9",
            O10 => "o10",
            O12_1 => "o12_1",
            O12_3 => "o12_3",
            O13_1 => "o13_1",
            O13_2 => "o13_2",
            O13_3 => "o13_3",
            O14_1 => "o14_1",
            O14_2 => "o14_2",
            O15_1 => "o15_1",
            O15_2 => "o15_2",
            O16_1 => "o16_1",
            O16_3 => "o16_3",
            O17 => "o17",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|l| l.name().eq_ignore_ascii_case(s))
    }

    /// Checked constructor enforcing the parity condition.
    pub fn for_field(s: &str, p: Parity) -> Result<Self> {
        let l = Self::parse(s).ok_or_else(|| Error::Parse(format!("unknown line orbit {s:?}")))?;
        if !l.valid_for(p) {
            return Err(Error::ParityMismatch { label: l.name().into(), parity: p.as_str() });
        }
        Ok(l)
    }
}

impl std::fmt::Display for LineOrbitLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Parameters of the representatives.
///
/// Each `(u_i, v_i)` pair has `v_i != 0` and satisfies `v_i l^2 + u_i v_i l - 1 != 0` for every
/// `l`; the pair is searched separately for each index because one common `u`
/// does not exist for every field (it fails at q = 3). For odd q, `-v1` is a
/// nonzero square, `-v2` a non-square and `delta` the first non-square. For
/// even q, the index-2 pair carries no extra condition and `delta` is 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RepParams {
    pub u: [Elem; 3],
    pub v: [Elem; 3],
    pub alpha: Elem,
    pub beta: Elem,
    pub gamma: Elem,
    pub delta: Elem,
}

fn root_free_quadratic(ctx: &FieldCtx, u: Elem, v: Elem) -> bool {
    if v == 0 {
        return false;
    }
    let uv = ctx.mul(u, v);
    ctx.elements().all(|l| ctx.sub(ctx.add(ctx.mul(v, ctx.mul(l, l)), ctx.mul(uv, l)), 1) != 0)
}

fn root_free_cubic(ctx: &FieldCtx, a: Elem, b: Elem, c: Elem) -> bool {
    ctx.elements().all(|l| {
        let l2 = ctx.mul(l, l);
        let v = ctx.add(ctx.sub(ctx.add(ctx.mul(l2, l), ctx.mul(c, l2)), ctx.mul(b, l)), a);
        v != 0
    })
}

pub fn find_rep_params(ctx: &FieldCtx) -> Result<RepParams> {
    let odd = ctx.is_odd();
    let side = |i: usize, v: Elem| -> bool {
        if !odd {
            return true;
        }
        match i {
            1 => ctx.is_nonzero_square(ctx.neg(v)),
            2 => !ctx.is_square(ctx.neg(v)),
            _ => true,
        }
    };
    let mut u = [0; 3];
    let mut v = [0; 3];
    for i in 0..3 {
        let (a, b) = ctx
            .elements()
            .flat_map(|a| ctx.elements().map(move |b| (a, b)))
            .find(|&(a, b)| side(i, b) && root_free_quadratic(ctx, a, b))
            .ok_or_else(|| Error::Inconsistent(format!("no (u, v) for index {i}")))?;
        u[i] = a;
        v[i] = b;
    }
    let (alpha, beta, gamma) = ctx
        .elements()
        .flat_map(|a| ctx.elements().flat_map(move |b| ctx.elements().map(move |c| (a, b, c))))
        .find(|&(a, b, c)| root_free_cubic(ctx, a, b, c))
        .ok_or_else(|| Error::Inconsistent("no root-free cubic".into()))?;
    let delta = if odd { ctx.first_nonsquare().unwrap() } else { 0 };
    Ok(RepParams { u, v, alpha, beta, gamma, delta })
}

fn e(i: usize) -> [Elem; 6] {
    let mut v = [0; 6];
    v[i] = 1;
    v
}

fn comb(ctx: &FieldCtx, terms: &[(Elem, usize)]) -> [Elem; 6] {
    let mut v = [0 as Elem; 6];
    for &(c, i) in terms {
        v[i] = ctx.add(v[i], c);
    }
    v
}

/// The two spanning points `x`, `y` of the representative line.
pub fn representative_points(label: LineOrbitLabel, p: &RepParams, ctx: &FieldCtx) -> Result<[[Elem; 6]; 2]> {
    if !label.valid_for(ctx.parity()) {
        return Err(Error::ParityMismatch { label: label.name().into(), parity: ctx.parity().as_str() });
    }
    let m1 = ctx.neg(1);
    let nd = ctx.neg(p.delta);
    let pts = match label {
        O5 => [e(0), e(3)],
        O6 => [e(0), e(1)],
        O8_1 => [e(0), comb(ctx, &[(1, 3), (m1, 5)])],
        O8_2 => [e(0), comb(ctx, &[(1, 3), (nd, 5)])],
        O8_3 => [e(0), e(4)],
        O9 => [e(0), comb(ctx, &[(1, 2), (1, 3)])],
        O10 => [comb(ctx, &[(p.v[0], 0), (1, 3)]), comb(ctx, &[(1, 1), (p.u[0], 3)])],
        O12_1 => [e(1), e(4)],
        O12_3 => [comb(ctx, &[(1, 1), (1, 3)]), comb(ctx, &[(1, 3), (1, 4)])],
        O13_1 => [e(1), comb(ctx, &[(1, 3), (m1, 5)])],
        O13_2 => [e(1), comb(ctx, &[(1, 3), (nd, 5)])],
        O13_3 => [comb(ctx, &[(1, 1), (1, 3)]), comb(ctx, &[(1, 3), (1, 5)])],
        O14_1 => [comb(ctx, &[(1, 0), (m1, 3)]), comb(ctx, &[(m1, 3), (1, 5)])],
        O14_2 => [comb(ctx, &[(1, 0), (nd, 3)]), comb(ctx, &[(nd, 3), (1, 5)])],
        O15_1 => [comb(ctx, &[(1, 1), (p.u[1], 3), (1, 5)]), comb(ctx, &[(p.v[1], 0), (1, 3)])],
        O15_2 => [comb(ctx, &[(1, 1), (p.u[2], 3), (1, 5)]), comb(ctx, &[(p.v[2], 0), (1, 3)])],
        O16_1 => [comb(ctx, &[(1, 2), (1, 3)]), e(4)],
        O16_3 => [comb(ctx, &[(1, 2), (1, 3)]), comb(ctx, &[(1, 4), (1, 5)])],
        O17 => [
            comb(ctx, &[(ctx.inv(p.alpha), 0), (ctx.neg(p.gamma), 3), (1, 4)]),
            comb(ctx, &[(1, 1), (p.beta, 3), (1, 5)]),
        ],
    };
    Ok(pts)
}

pub fn representative_line(label: LineOrbitLabel, p: &RepParams, ctx: &FieldCtx) -> Result<Subspace> {
    let pts = representative_points(label, p, ctx)?;
    Subspace::from_independent(ctx, &Matrix::from_rows(&pts)?)
}

// Form coefficient order: X0^2, X0X1, X0X2, X1^2, X1X2, X2^2.
const X00: usize = 0;
const X01: usize = 1;
const X02: usize = 2;
const X11: usize = 3;
const X12: usize = 4;
const X22: usize = 5;

/// Generators of the web of conics attached to the representative line.
pub fn representative_web(label: LineOrbitLabel, p: &RepParams, ctx: &FieldCtx) -> Result<[TernaryForm; 4]> {
    if !label.valid_for(ctx.parity()) {
        return Err(Error::ParityMismatch { label: label.name().into(), parity: ctx.parity().as_str() });
    }
    let m1 = ctx.neg(1);
    let d = p.delta;
    let f = |terms: &[(Elem, usize)]| comb(ctx, terms);
    let one = |i: usize| e(i);
    let gens: [[Elem; 6]; 4] = match label {
        O5 => [one(X01), one(X02), one(X12), one(X22)],
        O6 => [one(X02), one(X11), one(X12), one(X22)],
        O8_1 => [one(X01), one(X02), one(X12), f(&[(1, X11), (1, X22)])],
        O8_2 => [one(X01), one(X02), one(X12), f(&[(d, X11), (1, X22)])],
        O8_3 => [one(X01), one(X02), one(X11), one(X22)],
        O9 => [one(X01), f(&[(1, X02), (m1, X11)]), one(X12), one(X22)],
        O10 => [f(&[(ctx.inv(p.v[0]), X00), (p.u[0], X01), (m1, X11)]), one(X02), one(X12), one(X22)],
        O12_1 => [one(X00), one(X02), one(X11), one(X22)],
        O12_3 => [one(X00), one(X02), f(&[(1, X01), (1, X12), (1, X11)]), one(X22)],
        O13_1 => [one(X00), one(X02), f(&[(1, X11), (1, X22)]), one(X12)],
        O13_2 => [one(X00), one(X02), f(&[(d, X11), (1, X22)]), one(X12)],
        O13_3 => [one(X00), one(X02), f(&[(1, X11), (1, X01), (1, X22)]), one(X12)],
        O14_1 => [one(X01), one(X02), f(&[(1, X00), (1, X11), (1, X22)]), one(X12)],
        O14_2 => [one(X01), one(X02), f(&[(d, X00), (1, X11), (d, X22)]), one(X12)],
        O15_1 | O15_2 => {
            let i = if label == O15_1 { 1 } else { 2 };
            [
                one(X02),
                one(X12),
                f(&[(1, X01), (m1, X22)]),
                f(&[(ctx.inv(p.v[i]), X00), (p.u[i], X01), (m1, X11)]),
            ]
        }
        O16_1 => [one(X00), one(X01), f(&[(1, X02), (m1, X11)]), one(X22)],
        O16_3 => [one(X00), one(X01), f(&[(1, X02), (1, X11)]), f(&[(1, X12), (1, X22)])],
        O17 => [
            one(X02),
            f(&[(1, X01), (m1, X22)]),
            f(&[(p.alpha, X00), (m1, X12)]),
            f(&[(p.beta, X01), (m1, X11), (ctx.neg(p.gamma), X12)]),
        ],
    };
    let mut out = Vec::with_capacity(4);
    for g in gens {
        out.push(TernaryForm::new(ctx, g)?);
    }
    Ok(out.try_into().unwrap())
}

pub type Od0 = [u64; 4];

/// Counts the points of `l` per point orbit, in OD0 order.
pub fn point_od(geo: &Geometry, l: &Subspace) -> Od0 {
    let mut od = [0u64; 4];
    for p in l.points(geo.field()) {
        od[geo.point_label(&p).index()] += 1;
    }
    od
}

fn kernel_line(ctx: &FieldCtx, y: &[Elem; 6], lines: &[[Elem; 3]]) -> Option<[Elem; 3]> {
    let m = sym_matrix(y);
    lines.iter().copied().find(|l| (0..3).all(|i| dot(ctx, m.row(i), l) == 0))
}

/// Classifier state evaluated once per field.
pub struct LineClassifier<'a> {
    geo: &'a Geometry,
    by_od0: HashMap<Od0, Vec<LineOrbitLabel>>,
    lines2: Vec<[Elem; 3]>,
}

impl<'a> LineClassifier<'a> {
    pub fn new(geo: &'a Geometry) -> Self {
        let ctx = geo.field();
        let parity = ctx.parity();
        let spec = table(if parity == Parity::Odd { "T5" } else { "T6" });
        let mut by_od0: HashMap<Od0, Vec<LineOrbitLabel>> = HashMap::new();
        for &l in LineOrbitLabel::for_parity(parity) {
            let row = spec.row(l.name()).expect("every label has an OD0 row");
            let od: Vec<u64> = row.cells.iter().map(|c| eval_count(c, ctx.q() as u64).unwrap()).collect();
            by_od0.entry(od.try_into().unwrap()).or_default().push(l);
        }
        let lines2 = crate::veronese::plane_lines(ctx);
        LineClassifier { geo, by_od0, lines2 }
    }

    pub fn geometry(&self) -> &Geometry {
        self.geo
    }

    pub fn classify(&self, l: &Subspace) -> Result<LineOrbitLabel> {
        let (label, _) = self.classify_with_od0(l)?;
        Ok(label)
    }

    pub fn classify_with_od0(&self, l: &Subspace) -> Result<(LineOrbitLabel, Od0)> {
        if l.dim() != 1 || l.ambient_dim() != 5 {
            return Err(Error::DimensionMismatch { expected: 1, got: l.dim() });
        }
        let ctx = self.geo.field();
        let pts = l.points(ctx);
        let mut od = [0u64; 4];
        for p in &pts {
            od[self.geo.point_label(p).index()] += 1;
        }
        let cands = self
            .by_od0
            .get(&od)
            .ok_or_else(|| Error::Inconsistent(format!("OD0 {od:?} of line {:?} matches no orbit", l.basis().row_vecs())))?;
        if cands.len() == 1 {
            return Ok((cands[0], od));
        }
        let mut sorted = cands.clone();
        sorted.sort();
        let label = match sorted.as_slice() {
            [O15_1, O16_1] | [O15_1, O16_3] => {
                let hit = if sorted[1] == O16_1 { O16_1 } else { O16_3 };
                let p = pts
                    .iter()
                    .find(|p| sym_rank(ctx, &(*p).clone().try_into().unwrap()) == 2)
                    .ok_or_else(|| Error::Inconsistent("no rank-2 point".into()))?;
                let y: [Elem; 6] = p.clone().try_into().unwrap();
                let lk = kernel_line(ctx, &y, &self.lines2)
                    .ok_or_else(|| Error::Inconsistent("rank-2 point without conic plane".into()))?;
                let sq = mul_linear(ctx, &lk, &lk);
                let contains = (0..2).all(|r| dot(ctx, &sq, l.basis().row(r)) == 0);
                if contains {
                    hit
                } else {
                    O15_1
                }
            }
            [O10, O14_1] => {
                // only coincides at q = 2: the o10 lines lie inside a conic plane
                let ks: Vec<Option<[Elem; 3]>> =
                    pts.iter().map(|p| kernel_line(ctx, &p.clone().try_into().unwrap(), &self.lines2)).collect();
                if ks.iter().all(|k| k.is_some() && *k == ks[0]) {
                    O10
                } else {
                    O14_1
                }
            }
            other => return Err(Error::Inconsistent(format!("unresolved OD0 collision {other:?}"))),
        };
        Ok((label, od))
    }
}

pub fn classify_line(geo: &Geometry, l: &Subspace) -> Result<LineOrbitLabel> {
    LineClassifier::new(geo).classify(l)
}

/// Exhaustive orbit sizes, in the parity's label order.
pub fn orbit_sizes_lines(geo: &Geometry) -> Result<Vec<(LineOrbitLabel, u64)>> {
    let ctx = geo.field();
    let cls = LineClassifier::new(geo);
    let lines = enumerate_lines(ctx, &Subspace::whole(5))?;
    let labels: Result<Vec<LineOrbitLabel>> = lines.par_iter().map(|l| cls.classify(l)).collect();
    let mut counts: HashMap<LineOrbitLabel, u64> = HashMap::new();
    for l in labels? {
        *counts.entry(l).or_default() += 1;
    }
    Ok(LineOrbitLabel::for_parity(ctx.parity()).iter().map(|&l| (l, counts.get(&l).copied().unwrap_or(0))).collect())
}

/// Hyperplane point `l^2` for a line `l` of PG(2, q): the double line as a form.
pub fn double_line_form(ctx: &FieldCtx, l: &[Elem; 3]) -> [Elem; 6] {
    mul_linear(ctx, l, l)
}

/// The point labels of a line in order, for reporting.
pub fn point_labels_on(geo: &Geometry, l: &Subspace) -> Vec<PointOrbitLabel> {
    l.points(geo.field()).iter().map(|p| geo.point_label(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pglinalg::gaussian_binomial;
    use crate::veronese::conic_plane_of;
    use crate::SymPoint;

    #[test]
    fn params_examples() {
        let g3 = FieldCtx::new(3, 1).unwrap();
        let p = find_rep_params(&g3).unwrap();
        assert_eq!(p.delta, 2);
        assert!(!root_free_quadratic(&g3, 0, 1));
        assert!(root_free_quadratic(&g3, 0, 2));
        assert_eq!((p.u[0], p.v[0]), (0, 2));
        assert_eq!((p.u[1], p.v[1]), (0, 2));
        assert_eq!((p.u[2], p.v[2]), (1, 1));
        let g2 = FieldCtx::new(2, 1).unwrap();
        assert!(!root_free_cubic(&g2, 1, 1, 1));
        let p = find_rep_params(&g2).unwrap();
        assert_eq!((p.alpha, p.beta, p.gamma), (1, 0, 1));
    }

    #[test]
    fn params_satisfy_conditions() {
        for q in [2u32, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27] {
            let ctx = FieldCtx::from_order(q).unwrap();
            let p = find_rep_params(&ctx).unwrap();
            for i in 0..3 {
                assert!(root_free_quadratic(&ctx, p.u[i], p.v[i]));
            }
            assert!(root_free_cubic(&ctx, p.alpha, p.beta, p.gamma));
            if ctx.is_odd() {
                assert!(ctx.is_nonzero_square(ctx.neg(p.v[1])));
                assert!(!ctx.is_square(ctx.neg(p.v[2])));
                assert!(!ctx.is_square(p.delta));
            }
        }
    }

    #[test]
    fn representative_examples() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        let p = find_rep_params(&ctx).unwrap();
        let l = representative_line(O5, &p, &ctx).unwrap();
        assert_eq!(l.basis().row_vecs(), vec![vec![1, 0, 0, 0, 0, 0], vec![0, 0, 0, 1, 0, 0]]);
        let l = representative_line(O12_1, &p, &ctx).unwrap();
        assert_eq!(l.basis().row_vecs(), vec![vec![0, 1, 0, 0, 0, 0], vec![0, 0, 0, 0, 1, 0]]);
        let l = representative_line(O17, &p, &ctx).unwrap();
        assert!(l.points(&ctx).iter().all(|v| sym_rank(&ctx, &v.clone().try_into().unwrap()) == 3));
        assert!(matches!(representative_line(O8_3, &p, &ctx), Err(Error::ParityMismatch { .. })));
    }

    #[test]
    fn od0_examples() {
        let g3 = Geometry::new(3).unwrap();
        let p = find_rep_params(g3.field()).unwrap();
        assert_eq!(point_od(&g3, &representative_line(O5, &p, g3.field()).unwrap()), [2, 1, 1, 0]);
        assert_eq!(point_od(&g3, &representative_line(O8_1, &p, g3.field()).unwrap()), [1, 1, 0, 2]);
        let g2 = Geometry::new(2).unwrap();
        let p = find_rep_params(g2.field()).unwrap();
        assert_eq!(point_od(&g2, &representative_line(O10, &p, g2.field()).unwrap()), [0, 0, 3, 0]);
    }

    #[test]
    fn webs_are_duals_of_representatives() {
        for q in [2u32, 3, 4, 5, 7, 8, 9] {
            let ctx = FieldCtx::from_order(q).unwrap();
            let p = find_rep_params(&ctx).unwrap();
            for &label in LineOrbitLabel::for_parity(ctx.parity()) {
                let line = representative_line(label, &p, &ctx).unwrap();
                let web = representative_web(label, &p, &ctx).unwrap();
                let rows: Vec<[Elem; 6]> = web.iter().map(|f| f.coeffs()).collect();
                let w = Subspace::from_independent(&ctx, &Matrix::from_rows(&rows).unwrap()).unwrap();
                assert_eq!(line.dual(&ctx).unwrap(), w, "q={q} {label}");
            }
        }
    }

    #[test]
    fn representatives_classify_to_themselves() {
        for q in [2u32, 3, 4, 5, 7, 8, 9] {
            let geo = Geometry::new(q).unwrap();
            let ctx = geo.field();
            let p = find_rep_params(ctx).unwrap();
            let cls = LineClassifier::new(&geo);
            for &label in LineOrbitLabel::for_parity(ctx.parity()) {
                let line = representative_line(label, &p, ctx).unwrap();
                assert_eq!(cls.classify(&line).unwrap(), label, "q={q}");
            }
        }
    }

    #[test]
    fn tiebreak_agrees_with_span_based_conic_plane() {
        let geo = Geometry::new(3).unwrap();
        let ctx = geo.field();
        let lines2 = crate::veronese::plane_lines(ctx);
        for v in crate::pglinalg::enumerate_points(5, ctx) {
            let y: [Elem; 6] = v.clone().try_into().unwrap();
            if sym_rank(ctx, &y) == 2 {
                let (l, _) = conic_plane_of(ctx, &SymPoint::new(ctx, y).unwrap()).unwrap();
                assert_eq!(kernel_line(ctx, &y, &lines2), Some(l));
            }
        }
    }

    #[test]
    fn orbit_sizes_sum() {
        for q in [2u32, 3] {
            let geo = Geometry::new(q).unwrap();
            let sizes = orbit_sizes_lines(&geo).unwrap();
            let total: u64 = sizes.iter().map(|s| s.1).sum();
            assert_eq!(total, gaussian_binomial(6, 2, q as u64));
            let k = crate::groupaction::group_order(q as u64);
            for (_, s) in sizes {
                assert!(s > 0);
                assert_eq!(k % s, 0);
            }
        }
    }

    #[test]
    fn labels_parse() {
        assert_eq!(LineOrbitLabel::parse("o13_2"), Some(O13_2));
        assert!(LineOrbitLabel::for_field("o13_2", Parity::Even).is_err());
        assert_eq!(LineOrbitLabel::for_field("o16_3", Parity::Even).unwrap(), O16_3);
        assert_eq!(O16_1.position(Parity::Even), Some(12));
    }
}
