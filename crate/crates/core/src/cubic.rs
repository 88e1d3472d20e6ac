//! The discriminant cubic surface of a web of conics.

use rayon::prelude::*;
use serde::Serialize;

use crate::conics::{classify_conic, ConicType, TernaryForm};
use crate::error::{Error, Result};
use crate::gf::{Elem, FieldCtx};
use crate::pglinalg::{enumerate_points, point_at, point_count, Matrix, Subspace};

/// Exponents of the 20 cubic monomials in A, B, C, D, graded lexicographic
/// with A > B > C > D.
pub const MONOMIALS: [[u8; 4]; 20] = [
    [3, 0, 0, 0],
    [2, 1, 0, 0],
    [2, 0, 1, 0],
    [2, 0, 0, 1],
    [1, 2, 0, 0],
    [1, 1, 1, 0],
    [1, 1, 0, 1],
    [1, 0, 2, 0],
    [1, 0, 1, 1],
    [1, 0, 0, 2],
    [0, 3, 0, 0],
    [0, 2, 1, 0],
    [0, 2, 0, 1],
    [0, 1, 2, 0],
    [0, 1, 1, 1],
    [0, 1, 0, 2],
    [0, 0, 3, 0],
    [0, 0, 2, 1],
    [0, 0, 1, 2],
    [0, 0, 0, 3],
];

fn monomial_index(e: [u8; 4]) -> usize {
    MONOMIALS.iter().position(|m| *m == e).unwrap()
}

pub fn monomial_name(e: &[u8; 4]) -> String {
    let mut s = String::new();
    for (v, &k) in ["A", "B", "C", "D"].iter().zip(e) {
        match k {
            0 => {}
            1 => s.push_str(v),
            _ => s.push_str(&format!("{v}^{k}")),
        }
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CubicSurface {
    pub coefficients: [Elem; 20],
    /// Generator coefficient vectors exactly as given, not rescaled.
    pub generators: [[Elem; 6]; 4],
}

impl CubicSurface {
    pub fn evaluate(&self, ctx: &FieldCtx, t: &[Elem]) -> Elem {
        let mut pw = [[1 as Elem; 4]; 4];
        for i in 0..4 {
            for k in 1..4 {
                pw[i][k] = ctx.mul(pw[i][k - 1], t[i]);
            }
        }
        let mut acc = 0;
        for (c, e) in self.coefficients.iter().zip(MONOMIALS) {
            if *c == 0 {
                continue;
            }
            let mut m = *c;
            for i in 0..4 {
                m = ctx.mul(m, pw[i][e[i] as usize]);
            }
            acc = ctx.add(acc, m);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|&c| c == 0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "order": "grlex A>B>C>D",
            "monomials": MONOMIALS.iter().map(monomial_name).collect::<Vec<_>>(),
            "coefficients": self.coefficients.to_vec(),
            "generators": self.generators.to_vec(),
        })
    }
}

type Linear = [Elem; 4];

fn add_product(ctx: &FieldCtx, out: &mut [Elem; 20], scale: Elem, a: &Linear, b: &Linear, c: &Linear) {
    if scale == 0 {
        return;
    }
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                let v = ctx.mul(scale, ctx.mul(a[i], ctx.mul(b[j], c[k])));
                if v == 0 {
                    continue;
                }
                let mut e = [0u8; 4];
                e[i] += 1;
                e[j] += 1;
                e[k] += 1;
                let idx = monomial_index(e);
                out[idx] = ctx.add(out[idx], v);
            }
        }
    }
}

/// Expands the discriminant of `A f1 + B f2 + C f3 + D f4`.
pub fn discriminant_cubic(ctx: &FieldCtx, generators: &[TernaryForm; 4]) -> Result<CubicSurface> {
    discriminant_cubic_raw(ctx, &generators.map(|f| f.coeffs()))
}

/// As [`discriminant_cubic`] for unnormalized coefficient vectors, so that
/// scaled generators give the correspondingly scaled cubic.
pub fn discriminant_cubic_raw(ctx: &FieldCtx, rows: &[[Elem; 6]; 4]) -> Result<CubicSurface> {
    for r in rows {
        for &c in r {
            ctx.element(c as u32)?;
        }
    }
    Subspace::from_independent(ctx, &Matrix::from_rows(rows)?)?;
    // coefficient m of the generic member, as a linear form in A..D
    let lin = |m: usize| -> Linear { [rows[0][m], rows[1][m], rows[2][m], rows[3][m]] };
    let (a00, a01, a02, a11, a12, a22) = (lin(0), lin(1), lin(2), lin(3), lin(4), lin(5));
    let mut out = [0 as Elem; 20];
    let m1 = ctx.neg(1);
    add_product(ctx, &mut out, ctx.from_int(4), &a00, &a11, &a22);
    add_product(ctx, &mut out, 1, &a01, &a02, &a12);
    add_product(ctx, &mut out, m1, &a00, &a12, &a12);
    add_product(ctx, &mut out, m1, &a11, &a02, &a02);
    add_product(ctx, &mut out, m1, &a22, &a01, &a01);
    Ok(CubicSurface { coefficients: out, generators: *rows })
}

/// Rational points of the surface in PG(3, q).
pub fn count_points(ctx: &FieldCtx, x: &CubicSurface) -> u64 {
    let n = point_count(3, ctx.q()) as usize;
    (0..n).into_par_iter().filter(|&i| x.evaluate(ctx, &point_at(3, ctx.q(), i)) == 0).count() as u64
}

/// Points of the surface whose member of the web is a double line, that is
/// whose matrix has rank one.
pub fn rank_one_points(ctx: &FieldCtx, x: &CubicSurface) -> u64 {
    let rows = x.generators;
    enumerate_points(3, ctx)
        .filter(|t| x.evaluate(ctx, t) == 0)
        .filter(|t| {
            let mut f = [0 as Elem; 6];
            for (k, r) in rows.iter().enumerate() {
                for m in 0..6 {
                    f[m] = ctx.add(f[m], ctx.mul(t[k], r[m]));
                }
            }
            TernaryForm::new(ctx, f).map_or(false, |f| classify_conic(ctx, &f).ok() == Some(ConicType::DoubleLine))
        })
        .count() as u64
}

/// The pair `(i, count)` for a line: its number of points of rank at most
/// two and the number of points of the cubic of its web.
pub fn secant_link(ctx: &FieldCtx, l: &Subspace) -> Result<(u64, u64)> {
    if l.dim() != 1 || l.ambient_dim() != 5 {
        return Err(Error::DimensionMismatch { expected: 1, got: l.dim() });
    }
    let web = l.dual(ctx).unwrap();
    let gens: Vec<TernaryForm> =
        web.basis().row_vecs().into_iter().map(|r| TernaryForm::new(ctx, r.try_into().unwrap())).collect::<Result<_>>()?;
    let cubic = discriminant_cubic(ctx, &gens.try_into().unwrap())?;
    let i = l
        .points(ctx)
        .iter()
        .filter(|y| crate::veronese::sym_rank(ctx, &(*y).clone().try_into().unwrap()) <= 2)
        .count() as u64;
    Ok((i, count_points(ctx, &cubic)))
}

/// Whether the cubic of the web of `l` has `q^2 + i q + 1` points, with `i`
/// the number of rank at most two points of `l` in `{0, 1, 2, 3, q + 1}`.
pub fn secant_link_check(ctx: &FieldCtx, l: &Subspace) -> Result<bool> {
    let q = ctx.q() as u64;
    let (i, n) = secant_link(ctx, l)?;
    Ok(n == q * q + i * q + 1 && [0, 1, 2, 3, q + 1].contains(&i))
}
