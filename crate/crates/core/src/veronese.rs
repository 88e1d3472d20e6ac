//! The symmetric-matrix model of PG(5, q), the quadric Veronesean and the
//! point and hyperplane orbits of its stabiliser.

use serde::Serialize;

use crate::conics::{classify_conic, discriminant_of, ConicType, TernaryForm};
use crate::error::{Error, Result};
use crate::gf::{Elem, FieldCtx, Parity};
use crate::pglinalg::{enumerate_points, normalize, rank_of, Matrix, ProjPoint, Subspace};

/// Matrix positions of the six coordinates `y0..y5`.
pub const SYM_POS: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

/// A point of PG(5, q) read as the symmetric matrix
/// `[[y0, y1, y2], [y1, y3, y4], [y2, y4, y5]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymPoint {
    y: [Elem; 6],
}

impl SymPoint {
    pub fn new(ctx: &FieldCtx, mut y: [Elem; 6]) -> Result<Self> {
        for &c in &y {
            ctx.element(c as u32)?;
        }
        if !normalize(ctx, &mut y) {
            return Err(Error::ZeroVector);
        }
        Ok(SymPoint { y })
    }

    pub fn from_slice(ctx: &FieldCtx, y: &[Elem]) -> Result<Self> {
        let arr: [Elem; 6] =
            y.try_into().map_err(|_| Error::DimensionMismatch { expected: 6, got: y.len() })?;
        Self::new(ctx, arr)
    }

    pub fn parse(ctx: &FieldCtx, s: &str) -> Result<Self> {
        let v = crate::conics::parse_elements(ctx, s, 6)?;
        Self::from_slice(ctx, &v)
    }

    pub fn coords(&self) -> [Elem; 6] {
        self.y
    }

    pub fn matrix(&self) -> Matrix {
        sym_matrix(&self.y)
    }

    pub fn rank(&self, ctx: &FieldCtx) -> usize {
        sym_rank(ctx, &self.y)
    }

    pub fn to_proj(&self) -> ProjPoint {
        ProjPoint::from_normalized(self.y.to_vec())
    }
}

pub fn sym_matrix(y: &[Elem; 6]) -> Matrix {
    let mut m = Matrix::zeros(3, 3);
    for (k, &(i, j)) in SYM_POS.iter().enumerate() {
        m.set(i, j, y[k]);
        m.set(j, i, y[k]);
    }
    m
}

/// Reads the coordinates back from a symmetric matrix.
pub fn sym_coords(m: &Matrix) -> [Elem; 6] {
    std::array::from_fn(|k| m.get(SYM_POS[k].0, SYM_POS[k].1))
}

/// The 2x2 principal minors `(m11, m22, m33)`; `m_ii` deletes row and column i.
pub fn principal_minors(ctx: &FieldCtx, y: &[Elem; 6]) -> [Elem; 3] {
    let [y0, y1, y2, y3, y4, y5] = *y;
    let m = |a, b| ctx.mul(a, b);
    [
        ctx.sub(m(y3, y5), m(y4, y4)),
        ctx.sub(m(y0, y5), m(y2, y2)),
        ctx.sub(m(y0, y3), m(y1, y1)),
    ]
}

pub fn sym_det(ctx: &FieldCtx, y: &[Elem; 6]) -> Elem {
    let [y0, y1, y2, y3, y4, y5] = *y;
    let m = |a, b| ctx.mul(a, b);
    let t0 = m(y0, ctx.sub(m(y3, y5), m(y4, y4)));
    let t1 = m(y1, ctx.sub(m(y1, y5), m(y2, y4)));
    let t2 = m(y2, ctx.sub(m(y1, y4), m(y2, y3)));
    ctx.add(ctx.sub(t0, t1), t2)
}

pub fn sym_rank(ctx: &FieldCtx, y: &[Elem; 6]) -> usize {
    if y.iter().all(|&x| x == 0) {
        return 0;
    }
    if sym_det(ctx, y) != 0 {
        return 3;
    }
    let [y0, y1, y2, y3, y4, y5] = *y;
    let m = |a, b| ctx.mul(a, b);
    // all 2x2 minors of the symmetric matrix
    let minors = [
        ctx.sub(m(y0, y3), m(y1, y1)),
        ctx.sub(m(y0, y4), m(y1, y2)),
        ctx.sub(m(y1, y4), m(y3, y2)),
        ctx.sub(m(y0, y5), m(y2, y2)),
        ctx.sub(m(y1, y5), m(y4, y2)),
        ctx.sub(m(y3, y5), m(y4, y4)),
    ];
    if minors.iter().any(|&x| x != 0) {
        2
    } else {
        1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PointOrbitLabel {
    P1,
    P2e,
    P2i,
    P2n,
    P2s,
    P3,
}

impl PointOrbitLabel {
    pub const ODD: [PointOrbitLabel; 4] =
        [PointOrbitLabel::P1, PointOrbitLabel::P2e, PointOrbitLabel::P2i, PointOrbitLabel::P3];
    pub const EVEN: [PointOrbitLabel; 4] =
        [PointOrbitLabel::P1, PointOrbitLabel::P2n, PointOrbitLabel::P2s, PointOrbitLabel::P3];

    pub fn for_parity(p: Parity) -> [PointOrbitLabel; 4] {
        match p {
            Parity::Odd => Self::ODD,
            Parity::Even => Self::EVEN,
        }
    }

    /// Position in an OD0 vector.
    pub fn index(self) -> usize {
        match self {
            PointOrbitLabel::P1 => 0,
            PointOrbitLabel::P2e | PointOrbitLabel::P2n => 1,
            PointOrbitLabel::P2i | PointOrbitLabel::P2s => 2,
            PointOrbitLabel::P3 => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PointOrbitLabel::P1 => "P1",
            PointOrbitLabel::P2e => "P2e",
            PointOrbitLabel::P2i => "P2i",
            PointOrbitLabel::P2n => "P2n",
            PointOrbitLabel::P2s => "P2s",
            PointOrbitLabel::P3 => "P3",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [Self::P1, Self::P2e, Self::P2i, Self::P2n, Self::P2s, Self::P3]
            .into_iter()
            .find(|l| l.name().eq_ignore_ascii_case(s))
    }
}

impl std::fmt::Display for PointOrbitLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum HyperplaneOrbitLabel {
    H1,
    H2r,
    H2i,
    H3,
}

impl HyperplaneOrbitLabel {
    pub const ALL: [HyperplaneOrbitLabel; 4] =
        [HyperplaneOrbitLabel::H1, HyperplaneOrbitLabel::H2r, HyperplaneOrbitLabel::H2i, HyperplaneOrbitLabel::H3];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_conic(t: ConicType) -> Self {
        Self::ALL[t.index()]
    }

    pub fn name(self) -> &'static str {
        match self {
            HyperplaneOrbitLabel::H1 => "H1",
            HyperplaneOrbitLabel::H2r => "H2r",
            HyperplaneOrbitLabel::H2i => "H2i",
            HyperplaneOrbitLabel::H3 => "H3",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|l| l.name().eq_ignore_ascii_case(s))
    }
}

impl std::fmt::Display for HyperplaneOrbitLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// `(u0, u1, u2) -> (u0^2, u0u1, u0u2, u1^2, u1u2, u2^2)` on raw coordinates.
pub fn nu(ctx: &FieldCtx, u: &[Elem]) -> [Elem; 6] {
    std::array::from_fn(|k| ctx.mul(u[SYM_POS[k].0], u[SYM_POS[k].1]))
}

pub fn veronese_map(ctx: &FieldCtx, p: &ProjPoint) -> Result<SymPoint> {
    if p.coords().len() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, got: p.coords().len() });
    }
    SymPoint::new(ctx, nu(ctx, p.coords()))
}

/// Label from raw coordinates (not necessarily normalized).
pub fn point_label(ctx: &FieldCtx, y: &[Elem; 6]) -> Result<PointOrbitLabel> {
    match sym_rank(ctx, y) {
        0 => Err(Error::ZeroVector),
        1 => Ok(PointOrbitLabel::P1),
        3 => Ok(PointOrbitLabel::P3),
        _ => {
            if ctx.is_odd() {
                let mins = principal_minors(ctx, y);
                let negs = mins.map(|m| ctx.neg(m));
                if negs.iter().all(|&x| ctx.is_square(x)) && negs.iter().any(|&x| x != 0) {
                    Ok(PointOrbitLabel::P2e)
                } else {
                    Ok(PointOrbitLabel::P2i)
                }
            } else if y[0] == 0 && y[3] == 0 && y[5] == 0 {
                Ok(PointOrbitLabel::P2n)
            } else {
                Ok(PointOrbitLabel::P2s)
            }
        }
    }
}

pub fn classify_point(ctx: &FieldCtx, p: &SymPoint) -> PointOrbitLabel {
    point_label(ctx, &p.y).expect("SymPoint is nonzero")
}

/// Closed-form orbit sizes in OD0 order.
pub fn orbit_sizes_points(ctx: &FieldCtx) -> Vec<(PointOrbitLabel, u64)> {
    let q = ctx.q() as u64;
    let p2 = q * q + q + 1;
    let labels = PointOrbitLabel::for_parity(ctx.parity());
    let sizes = if ctx.is_odd() {
        [p2, q * (q + 1) * p2 / 2, q * (q - 1) * p2 / 2, q.pow(5) - q * q]
    } else {
        [p2, p2, (q * q - 1) * p2, q.pow(5) - q * q]
    };
    labels.into_iter().zip(sizes).collect()
}

/// The plane spanned by the image of the line `Z(l0 X0 + l1 X1 + l2 X2)`.
pub fn conic_plane(ctx: &FieldCtx, l: &[Elem; 3]) -> Subspace {
    let line = Subspace::from_vecs(ctx, &[l.to_vec()]).unwrap().dual(ctx).unwrap();
    let u = line.basis().row(0).to_vec();
    let v = line.basis().row(1).to_vec();
    let w: Vec<Elem> = u.iter().zip(&v).map(|(&a, &b)| ctx.add(a, b)).collect();
    Subspace::from_vecs(ctx, &[nu(ctx, &u), nu(ctx, &v), nu(ctx, &w)]).unwrap()
}

/// Lines of PG(2, q) as normalized dual coordinates.
pub fn plane_lines(ctx: &FieldCtx) -> Vec<[Elem; 3]> {
    enumerate_points(2, ctx).map(|v| [v[0], v[1], v[2]]).collect()
}

/// The unique line `l` of PG(2, q) whose conic plane contains `p`, and that plane.
pub fn conic_plane_of(ctx: &FieldCtx, p: &SymPoint) -> Result<([Elem; 3], Subspace)> {
    let r = p.rank(ctx);
    if r != 2 {
        return Err(Error::NotRankTwo(r));
    }
    let mut found = Vec::new();
    for l in plane_lines(ctx) {
        let plane = conic_plane(ctx, &l);
        if plane.contains_vec(ctx, &p.y)? {
            found.push((l, plane));
        }
    }
    if found.len() != 1 {
        return Err(Error::Inconsistent(format!("rank-2 point in {} conic planes", found.len())));
    }
    Ok(found.pop().unwrap())
}

/// Number of tangent lines to the conic C(p) through `p` inside its conic
/// plane; two for exterior points, none for interior ones.
pub fn tangent_count(ctx: &FieldCtx, p: &SymPoint) -> Result<usize> {
    let (l, _) = conic_plane_of(ctx, p)?;
    let line = Subspace::from_vecs(ctx, &[l.to_vec()])?.dual(ctx).unwrap();
    let conic: Vec<[Elem; 6]> = line.points(ctx).iter().map(|u| nu(ctx, u)).collect();
    let y = p.y;
    let mut tangents = 0;
    for (i, c) in conic.iter().enumerate() {
        let shared = conic
            .iter()
            .enumerate()
            .any(|(j, d)| j != i && rank_of(ctx, &[&y, c, d]) == 2);
        if !shared {
            tangents += 1;
        }
    }
    Ok(tangents)
}

/// The hyperplane `Z(a00 Y0 + a01 Y1 + a02 Y2 + a11 Y3 + a12 Y4 + a22 Y5)`.
pub fn delta(ctx: &FieldCtx, f: &TernaryForm) -> Subspace {
    Subspace::from_vecs(ctx, &[f.coeffs().to_vec()]).unwrap().dual(ctx).unwrap()
}

/// Inverse of [`delta`].
pub fn delta_inverse(ctx: &FieldCtx, h: &Subspace) -> Result<TernaryForm> {
    if h.ambient_dim() != 5 || h.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, got: h.dim() });
    }
    let d = h.dual(ctx).unwrap();
    TernaryForm::new(ctx, d.basis().row(0).try_into().unwrap())
}

pub fn classify_hyperplane(ctx: &FieldCtx, h: &Subspace) -> Result<HyperplaneOrbitLabel> {
    let f = delta_inverse(ctx, h)?;
    let t = classify_conic(ctx, &f)?;
    if ctx.is_odd() {
        let nonzero = discriminant_of(ctx, &f.coeffs()) != 0;
        if nonzero != (t == ConicType::NonSingular) {
            return Err(Error::Inconsistent(format!("discriminant disagrees with zero locus for {f}")));
        }
    }
    Ok(HyperplaneOrbitLabel::from_conic(t))
}

/// Points with zero main diagonal (the nuclei of the conics of V for even q).
pub fn nucleus_plane(ctx: &FieldCtx) -> Subspace {
    Subspace::from_vecs(ctx, &[[0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0], [0, 0, 0, 0, 1, 0]]).unwrap()
}
