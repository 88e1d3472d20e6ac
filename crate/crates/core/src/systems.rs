//! Linear systems of conics and their hyperplane-orbit distributions.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::conics::TernaryForm;
use crate::cubic::{count_points, discriminant_cubic};
use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::gf::{Elem, FieldCtx};
use crate::lineclass::{LineClassifier, LineOrbitLabel};
use crate::pglinalg::{enumerate_lines, enumerate_points, point_count, Matrix, Subspace};
use crate::veronese::{sym_rank, HyperplaneOrbitLabel, SymPoint};

/// Counts per hyperplane orbit in the order H1, H2r, H2i, H3.
pub type Od4 = [u64; 4];

/// A pencil, net, web or squab: the span of 2 to 5 independent forms.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    generators: Vec<TernaryForm>,
    forms: Subspace,
    dual: Subspace,
}

impl LinearSystem {
    pub fn new(ctx: &FieldCtx, generators: &[TernaryForm]) -> Result<Self> {
        if !(2..=5).contains(&generators.len()) {
            return Err(Error::TrivialSystem(generators.len()));
        }
        let rows: Vec<[Elem; 6]> = generators.iter().map(|f| f.coeffs()).collect();
        let forms = Subspace::from_independent(ctx, &Matrix::from_rows(&rows)?)?;
        let dual = forms.dual(ctx).ok_or(Error::TrivialSystem(6))?;
        Ok(LinearSystem { generators: generators.to_vec(), forms, dual })
    }

    /// The system whose forms vanish on the subspace `s` of PG(5, q).
    pub fn of_subspace(ctx: &FieldCtx, s: &Subspace) -> Result<Self> {
        let forms = s.dual(ctx).ok_or(Error::TrivialSystem(0))?;
        let gens = forms
            .basis()
            .row_vecs()
            .into_iter()
            .map(|r| TernaryForm::new(ctx, r.try_into().unwrap()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ctx, &gens)
    }

    pub fn generators(&self) -> &[TernaryForm] {
        &self.generators
    }

    /// Projective dimension: 1 for a pencil up to 4 for a squab.
    pub fn dim(&self) -> usize {
        self.forms.dim()
    }

    pub fn form_space(&self) -> &Subspace {
        &self.forms
    }

    pub fn dual_subspace(&self) -> &Subspace {
        &self.dual
    }

    pub fn member_count(&self, q: u32) -> u64 {
        point_count(self.dim(), q)
    }

    /// Conic types of all members.
    pub fn od4(&self, geo: &Geometry) -> Od4 {
        od4_of_forms(geo, &self.forms)
    }
}

fn od4_of_forms(geo: &Geometry, forms: &Subspace) -> Od4 {
    let mut od = [0u64; 4];
    for a in forms.points(geo.field()) {
        od[HyperplaneOrbitLabel::from_conic(geo.conic_type(&a)).index()] += 1;
    }
    od
}

/// OD4 of a point: the conic types of the squab orthogonal to it.
pub fn od4_of_point(geo: &Geometry, p: &SymPoint) -> Od4 {
    let s = Subspace::from_vecs(geo.field(), &[p.coords()]).unwrap();
    od4_of_forms(geo, &s.dual(geo.field()).unwrap())
}

/// OD4 of a line: the conic types of its web.
pub fn od4_of_line(geo: &Geometry, l: &Subspace) -> Result<Od4> {
    if l.dim() != 1 || l.ambient_dim() != 5 {
        return Err(Error::DimensionMismatch { expected: 1, got: l.dim() });
    }
    Ok(od4_of_forms(geo, &l.dual(geo.field()).unwrap()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SquabInvariants {
    pub rank: usize,
    pub double_lines: u64,
    pub nonsingular: u64,
    /// Whether the double-line and non-singular counts take the values forced
    /// by the rank.
    pub consistent: bool,
}

pub fn squab_invariants(geo: &Geometry, p: &SymPoint) -> SquabInvariants {
    let q = geo.q() as u64;
    let rank = p.rank(geo.field());
    let od = od4_of_point(geo, p);
    let h3_ok = od[3] == if rank == 3 { q.pow(4) } else { q.pow(4) - q * q };
    let h1_ok = rank == 2 || od[0] == q + 1;
    SquabInvariants { rank, double_lines: od[0], nonsingular: od[3], consistent: h3_ok && h1_ok }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WebProfile {
    pub od4: Od4,
    pub od0: [u64; 4],
    pub line_label: LineOrbitLabel,
    pub line: Vec<Vec<Elem>>,
    pub cubic_point_count: u64,
    /// Points of rank at most two on the line of the web.
    pub secant_intersection: u64,
}

impl WebProfile {
    /// Sum and cubic identities every profile satisfies.
    pub fn checks(&self, q: u64) -> Vec<(&'static str, bool)> {
        let h = self.od4;
        vec![
            ("od4_sum", h.iter().sum::<u64>() == q.pow(3) + q * q + q + 1),
            ("cubic_equals_singular", self.cubic_point_count == h[0] + h[1] + h[2]),
            ("cubic_equals_secant_formula", self.cubic_point_count == q * q + self.secant_intersection * q + 1),
        ]
    }
}

pub fn web_profile(cls: &LineClassifier, generators: &[TernaryForm; 4]) -> Result<WebProfile> {
    let geo = cls.geometry();
    let ctx = geo.field();
    let sys = LinearSystem::new(ctx, generators)?;
    let line = sys.dual_subspace().clone();
    let (line_label, od0) = cls.classify_with_od0(&line)?;
    let cubic = discriminant_cubic(ctx, generators)?;
    let secant = line
        .points(ctx)
        .iter()
        .filter(|y| sym_rank(ctx, &(*y).clone().try_into().unwrap()) <= 2)
        .count() as u64;
    Ok(WebProfile {
        od4: sys.od4(geo),
        od0,
        line_label,
        line: line.basis().row_vecs(),
        cubic_point_count: count_points(ctx, &cubic),
        secant_intersection: secant,
    })
}

/// OD1 of a hyperplane: line-orbit counts of the lines it contains, in the
/// parity's label order.
pub fn od1_of_hyperplane(cls: &LineClassifier, h: &Subspace) -> Result<Vec<u64>> {
    let ctx = cls.geometry().field();
    if h.ambient_dim() != 5 || h.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, got: h.dim() });
    }
    let labels = LineOrbitLabel::for_parity(ctx.parity());
    let lines = enumerate_lines(ctx, h)?;
    let found: Result<Vec<LineOrbitLabel>> = lines.par_iter().map(|l| cls.classify(l)).collect();
    let mut od = vec![0u64; labels.len()];
    for l in found? {
        od[l.position(ctx.parity()).unwrap()] += 1;
    }
    Ok(od)
}

/// First form of each conic type in enumeration order.
pub fn representative_forms(geo: &Geometry) -> [TernaryForm; 4] {
    let ctx = geo.field();
    let mut out: [Option<TernaryForm>; 4] = [None, None, None, None];
    for a in enumerate_points(5, ctx) {
        let t = geo.conic_type(&a);
        if out[t.index()].is_none() {
            out[t.index()] = Some(TernaryForm::new(ctx, a.try_into().unwrap()).unwrap());
        }
        if out.iter().all(Option::is_some) {
            break;
        }
    }
    out.map(Option::unwrap)
}

/// Number of forms of each conic type, i.e. the hyperplane orbit sizes.
pub fn hyperplane_orbit_sizes(geo: &Geometry) -> Od4 {
    let mut od = [0u64; 4];
    for a in enumerate_points(5, geo.field()) {
        od[geo.conic_type(&a).index()] += 1;
    }
    od
}

/// Double counting of incident (line, hyperplane) pairs for one line orbit and
/// one hyperplane orbit: `|o| * h_j(o) == |H_j| * od1(H)[o]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FlagCount {
    pub lines_side: u64,
    pub hyperplanes_side: u64,
}

impl FlagCount {
    pub fn holds(&self) -> bool {
        self.lines_side == self.hyperplanes_side
    }
}

/// Context for repeated flag-count checks at one q: exhaustive line-orbit
/// sizes, hyperplane orbit sizes and one OD1 per hyperplane orbit.
pub struct FlagCounter<'a> {
    cls: &'a LineClassifier<'a>,
    line_sizes: HashMap<LineOrbitLabel, u64>,
    hyper_sizes: Od4,
    od1: Vec<Vec<u64>>,
}

impl<'a> FlagCounter<'a> {
    pub fn new(cls: &'a LineClassifier<'a>) -> Result<Self> {
        let geo = cls.geometry();
        let ctx = geo.field();
        let lines = enumerate_lines(ctx, &Subspace::whole(5))?;
        let labels: Result<Vec<LineOrbitLabel>> = lines.par_iter().map(|l| cls.classify(l)).collect();
        let mut line_sizes = HashMap::new();
        for l in labels? {
            *line_sizes.entry(l).or_insert(0) += 1;
        }
        let mut od1 = Vec::new();
        for f in representative_forms(geo) {
            od1.push(od1_of_hyperplane(cls, &crate::veronese::delta(ctx, &f))?);
        }
        Ok(FlagCounter { cls, line_sizes, hyper_sizes: hyperplane_orbit_sizes(geo), od1 })
    }

    pub fn check(&self, label: LineOrbitLabel, j: HyperplaneOrbitLabel) -> Result<FlagCount> {
        let geo = self.cls.geometry();
        let ctx = geo.field();
        let pos = label
            .position(ctx.parity())
            .ok_or_else(|| Error::ParityMismatch { label: label.name().into(), parity: ctx.parity().as_str() })?;
        let p = crate::lineclass::find_rep_params(ctx)?;
        let rep = crate::lineclass::representative_line(label, &p, ctx)?;
        let h = od4_of_line(geo, &rep)?;
        let size = self.line_sizes.get(&label).copied().unwrap_or(0);
        Ok(FlagCount {
            lines_side: size * h[j.index()],
            hyperplanes_side: self.hyper_sizes[j.index()] * self.od1[j.index()][pos],
        })
    }
}

pub fn flag_count_check(cls: &LineClassifier, label: LineOrbitLabel, j: HyperplaneOrbitLabel) -> Result<bool> {
    Ok(FlagCounter::new(cls)?.check(label, j)?.holds())
}

/// Conic type of a form as a hyperplane orbit label.
pub fn hyperplane_label_of(geo: &Geometry, f: &TernaryForm) -> HyperplaneOrbitLabel {
    HyperplaneOrbitLabel::from_conic(geo.conic_type(&f.coeffs()))
}
