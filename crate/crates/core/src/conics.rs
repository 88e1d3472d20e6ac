//! Ternary quadratic forms and the four conic types of PG(2, q).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldCtx};
use crate::pglinalg::{enumerate_points, normalize, rank_of, Matrix};

/// Coefficients `(a00, a01, a02, a11, a12, a22)` of
/// `a00 X0^2 + a01 X0X1 + a02 X0X2 + a11 X1^2 + a12 X1X2 + a22 X2^2`,
/// scaled so the first nonzero coefficient is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TernaryForm {
    a: [Elem; 6],
}

impl TernaryForm {
    pub fn new(ctx: &FieldCtx, mut a: [Elem; 6]) -> Result<Self> {
        for &c in &a {
            ctx.element(c as u32)?;
        }
        if !normalize(ctx, &mut a) {
            return Err(Error::ZeroForm);
        }
        Ok(TernaryForm { a })
    }

    pub fn coeffs(&self) -> [Elem; 6] {
        self.a
    }

    pub fn eval(&self, ctx: &FieldCtx, u: &[Elem]) -> Elem {
        eval_form(ctx, &self.a, u)
    }

    /// Parses six comma-separated element literals.
    pub fn parse(ctx: &FieldCtx, s: &str) -> Result<Self> {
        let v = parse_elements(ctx, s, 6)?;
        Self::new(ctx, v.try_into().unwrap())
    }

    /// The form `u -> f(A u)`.
    pub fn substitute(&self, ctx: &FieldCtx, a: &Matrix) -> TernaryForm {
        let mut out = [0 as Elem; 6];
        // f(Au) = sum a_ij (Au)_i (Au)_j ; expand each product of linear forms
        let rows: Vec<[Elem; 3]> = (0..3).map(|i| [a.get(i, 0), a.get(i, 1), a.get(i, 2)]).collect();
        for (k, (i, j)) in MONOMIALS.iter().enumerate() {
            let c = self.a[k];
            if c == 0 {
                continue;
            }
            let prod = mul_linear(ctx, &rows[*i], &rows[*j]);
            for t in 0..6 {
                out[t] = ctx.add(out[t], ctx.mul(c, prod[t]));
            }
        }
        TernaryForm::new(ctx, out).expect("substitution by an invertible matrix")
    }
}

impl std::fmt::Display for TernaryForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.a.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// Index pairs of the monomials in coefficient order.
pub const MONOMIALS: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

/// Coefficient vector of the product of two linear forms.
pub fn mul_linear(ctx: &FieldCtx, l: &[Elem; 3], m: &[Elem; 3]) -> [Elem; 6] {
    let mut out = [0 as Elem; 6];
    for i in 0..3 {
        for j in 0..3 {
            let c = ctx.mul(l[i], m[j]);
            if c == 0 {
                continue;
            }
            let (a, b) = if i <= j { (i, j) } else { (j, i) };
            let k = MONOMIALS.iter().position(|&x| x == (a, b)).unwrap();
            out[k] = ctx.add(out[k], c);
        }
    }
    out
}

pub fn eval_form(ctx: &FieldCtx, a: &[Elem; 6], u: &[Elem]) -> Elem {
    let mut s = 0;
    for (k, &(i, j)) in MONOMIALS.iter().enumerate() {
        if a[k] != 0 {
            s = ctx.add(s, ctx.mul(a[k], ctx.mul(u[i], u[j])));
        }
    }
    s
}

pub fn parse_elements(ctx: &FieldCtx, s: &str, n: usize) -> Result<Vec<Elem>> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != n {
        return Err(Error::Parse(format!("expected {n} comma-separated elements, got {}", parts.len())));
    }
    parts
        .iter()
        .map(|p| {
            let v: u32 = p.parse().map_err(|_| Error::Parse(format!("bad element literal {p:?}")))?;
            ctx.element(v)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ConicType {
    DoubleLine,
    RealPair,
    ImaginaryPair,
    NonSingular,
}

impl ConicType {
    pub const ALL: [ConicType; 4] =
        [ConicType::DoubleLine, ConicType::RealPair, ConicType::ImaginaryPair, ConicType::NonSingular];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// The polynomial `4 a00 a11 a22 + a01 a02 a12 - a00 a12^2 - a11 a02^2 - a22 a01^2`.
pub fn discriminant_of(ctx: &FieldCtx, a: &[Elem; 6]) -> Elem {
    let [a00, a01, a02, a11, a12, a22] = *a;
    let m = |x, y| ctx.mul(x, y);
    let four = ctx.from_int(4);
    let mut d = m(four, m(a00, m(a11, a22)));
    d = ctx.add(d, m(a01, m(a02, a12)));
    d = ctx.sub(d, m(a00, m(a12, a12)));
    d = ctx.sub(d, m(a11, m(a02, a02)));
    d = ctx.sub(d, m(a22, m(a01, a01)));
    d
}

pub fn discriminant(ctx: &FieldCtx, f: &TernaryForm) -> Elem {
    discriminant_of(ctx, &f.a)
}

pub fn zero_locus(ctx: &FieldCtx, f: &TernaryForm) -> Vec<Vec<Elem>> {
    enumerate_points(2, ctx).filter(|u| f.eval(ctx, u) == 0).collect()
}

/// Decision on the zero locus alone.
pub fn type_from_locus(ctx: &FieldCtx, z: &[Vec<Elem>]) -> Result<ConicType> {
    let q = ctx.q() as usize;
    match z.len() {
        1 => Ok(ConicType::ImaginaryPair),
        n if n == 2 * q + 1 => Ok(ConicType::RealPair),
        n if n == q + 1 => {
            let rows: Vec<&[Elem]> = z.iter().map(|v| v.as_slice()).collect();
            if rank_of(ctx, &rows) <= 2 {
                Ok(ConicType::DoubleLine)
            } else {
                Ok(ConicType::NonSingular)
            }
        }
        n => Err(Error::Inconsistent(format!("conic with {n} points over GF({q})"))),
    }
}

pub fn classify_conic(ctx: &FieldCtx, f: &TernaryForm) -> Result<ConicType> {
    type_from_locus(ctx, &zero_locus(ctx, f))
}

/// Reads a point of the dual space as a form via the fixed coordinate pairing.
pub fn point_to_form(ctx: &FieldCtx, y: &[Elem; 6]) -> Result<TernaryForm> {
    TernaryForm::new(ctx, *y)
}

pub fn form_to_point(f: &TernaryForm) -> [Elem; 6] {
    f.a
}
