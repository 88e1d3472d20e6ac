//! Dense linear algebra over GF(q) and projective-space bookkeeping.

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldCtx};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows<R: AsRef<[Elem]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: r.len() });
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix { rows: rows.len(), cols, data })
    }

    /// Row-major construction; `data.len()` must be `rows * cols`.
    pub fn from_flat(rows: usize, cols: usize, data: Vec<Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, got: data.len() });
        }
        Ok(Matrix { rows, cols, data })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }
    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn as_flat(&self) -> &[Elem] {
        &self.data
    }
    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = ctx.add(out.get(i, j), ctx.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Reduced row-echelon form with zero rows dropped, plus pivot columns.
    pub fn rref(&self, ctx: &FieldCtx) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = rref_in_place(ctx, &mut m.data, m.rows, m.cols);
        m.data.truncate(pivots.len() * m.cols);
        m.rows = pivots.len();
        (m, pivots)
    }

    pub fn rank(&self, ctx: &FieldCtx) -> usize {
        let mut d = self.data.clone();
        rref_in_place(ctx, &mut d, self.rows, self.cols).len()
    }

    pub fn det(&self, ctx: &FieldCtx) -> Result<Elem> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, got: self.cols });
        }
        let n = self.rows;
        let mut m = self.data.clone();
        let mut det: Elem = 1;
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| m[r * n + c] != 0) else {
                return Ok(0);
            };
            if p != c {
                for j in 0..n {
                    m.swap(p * n + j, c * n + j);
                }
                det = ctx.neg(det);
            }
            let piv = m[c * n + c];
            det = ctx.mul(det, piv);
            let pinv = ctx.inv(piv);
            for r in c + 1..n {
                let f = ctx.mul(m[r * n + c], pinv);
                if f == 0 {
                    continue;
                }
                for j in c..n {
                    m[r * n + j] = ctx.sub(m[r * n + j], ctx.mul(f, m[c * n + j]));
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self, ctx: &FieldCtx) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, 1);
        }
        let (red, piv) = aug.rref(ctx);
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut out = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, red.get(r, n + c));
            }
        }
        Some(out)
    }
}

fn rref_in_place(ctx: &FieldCtx, m: &mut [Elem], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| m[i * cols + c] != 0) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = ctx.inv(m[r * cols + c]);
        for j in c..cols {
            m[r * cols + j] = ctx.mul(m[r * cols + j], inv);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = m[i * cols + c];
            if f == 0 {
                continue;
            }
            for j in c..cols {
                m[i * cols + j] = ctx.sub(m[i * cols + j], ctx.mul(f, m[r * cols + j]));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn matrix_rank(ctx: &FieldCtx, m: &Matrix) -> usize {
    m.rank(ctx)
}

/// Rank of a list of equal-length vectors.
pub fn rank_of(ctx: &FieldCtx, vecs: &[&[Elem]]) -> usize {
    let cols = vecs.first().map_or(0, |v| v.len());
    let mut data: Vec<Elem> = Vec::with_capacity(vecs.len() * cols);
    for v in vecs {
        data.extend_from_slice(v);
    }
    rref_in_place(ctx, &mut data, vecs.len(), cols).len()
}

/// Scales so the first nonzero coordinate is 1. Returns false for the zero vector.
pub fn normalize(ctx: &FieldCtx, v: &mut [Elem]) -> bool {
    let Some(&lead) = v.iter().find(|&&x| x != 0) else {
        return false;
    };
    if lead != 1 {
        let inv = ctx.inv(lead);
        for x in v.iter_mut() {
            *x = ctx.mul(*x, inv);
        }
    }
    true
}

pub fn dot(ctx: &FieldCtx, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| ctx.add(acc, ctx.mul(x, y)))
}

/// A point of PG(n, q) in normalized coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<Elem>,
}

impl ProjPoint {
    pub fn new(ctx: &FieldCtx, mut coords: Vec<Elem>) -> Result<Self> {
        for &c in &coords {
            ctx.element(c as u32)?;
        }
        if !normalize(ctx, &mut coords) {
            return Err(Error::ZeroVector);
        }
        Ok(ProjPoint { coords })
    }

    /// Wraps coordinates already known to be normalized.
    pub fn from_normalized(coords: Vec<Elem>) -> Self {
        debug_assert!(coords.iter().find(|&&x| x != 0) == Some(&1));
        ProjPoint { coords }
    }

    pub fn coords(&self) -> &[Elem] {
        &self.coords
    }
    pub fn into_coords(self) -> Vec<Elem> {
        self.coords
    }
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }
}

/// A projective subspace stored as its canonical RREF basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    basis: Matrix,
}

impl Subspace {
    /// Span of the given rows (which may be dependent).
    pub fn from_rows(ctx: &FieldCtx, rows: &Matrix) -> Result<Self> {
        let (basis, piv) = rows.rref(ctx);
        if piv.is_empty() {
            return Err(Error::ZeroVector);
        }
        Ok(Subspace { basis })
    }

    /// Like `from_rows`, but rejects linearly dependent rows.
    pub fn from_independent(ctx: &FieldCtx, rows: &Matrix) -> Result<Self> {
        let s = Self::from_rows(ctx, rows)?;
        if s.basis.rows() != rows.rows() {
            return Err(Error::DependentGenerators);
        }
        Ok(s)
    }

    pub fn from_vecs<R: AsRef<[Elem]>>(ctx: &FieldCtx, rows: &[R]) -> Result<Self> {
        Self::from_rows(ctx, &Matrix::from_rows(rows)?)
    }

    /// Trusts that `basis` is already in RREF with no zero rows.
    pub fn from_rref_unchecked(basis: Matrix) -> Self {
        Subspace { basis }
    }

    pub fn whole(n: usize) -> Self {
        Subspace { basis: Matrix::identity(n + 1) }
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }
    /// Projective dimension.
    pub fn dim(&self) -> usize {
        self.basis.rows() - 1
    }
    /// Dimension of the ambient projective space.
    pub fn ambient_dim(&self) -> usize {
        self.basis.cols() - 1
    }

    pub fn point_count(&self, q: u32) -> u64 {
        let k = self.basis.rows() as u32;
        ((q as u64).pow(k) - 1) / (q as u64 - 1)
    }

    pub fn contains_vec(&self, ctx: &FieldCtx, v: &[Elem]) -> Result<bool> {
        if v.len() != self.basis.cols() {
            return Err(Error::DimensionMismatch { expected: self.basis.cols(), got: v.len() });
        }
        // reduce v against the RREF basis
        let mut w = v.to_vec();
        let piv = self.pivots();
        for (r, &c) in piv.iter().enumerate() {
            let f = w[c];
            if f != 0 {
                for (j, x) in w.iter_mut().enumerate() {
                    *x = ctx.sub(*x, ctx.mul(f, self.basis.get(r, j)));
                }
            }
        }
        Ok(w.iter().all(|&x| x == 0))
    }

    pub fn contains(&self, ctx: &FieldCtx, p: &ProjPoint) -> Result<bool> {
        self.contains_vec(ctx, p.coords())
    }

    pub fn contains_subspace(&self, ctx: &FieldCtx, other: &Subspace) -> Result<bool> {
        for r in 0..other.basis.rows() {
            if !self.contains_vec(ctx, other.basis.row(r))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.basis.rows())
            .map(|r| self.basis.row(r).iter().position(|&x| x != 0).unwrap())
            .collect()
    }

    /// All points, normalized, in the order of their coefficient vectors.
    pub fn points(&self, ctx: &FieldCtx) -> Vec<Vec<Elem>> {
        let k = self.basis.rows();
        let cols = self.basis.cols();
        enumerate_points(k - 1, ctx)
            .map(|c| {
                let mut v = vec![0 as Elem; cols];
                for (r, &cr) in c.iter().enumerate() {
                    if cr == 0 {
                        continue;
                    }
                    for (j, x) in v.iter_mut().enumerate() {
                        *x = ctx.add(*x, ctx.mul(cr, self.basis.get(r, j)));
                    }
                }
                v
            })
            .collect()
    }

    /// Orthogonal complement under the standard bilinear pairing, or `None`
    /// when `self` is the whole space.
    pub fn dual(&self, ctx: &FieldCtx) -> Option<Subspace> {
        let n = self.basis.cols();
        let piv = self.pivots();
        let free: Vec<usize> = (0..n).filter(|c| !piv.contains(c)).collect();
        if free.is_empty() {
            return None;
        }
        let mut rows = Matrix::zeros(free.len(), n);
        for (i, &f) in free.iter().enumerate() {
            rows.set(i, f, 1);
            for (r, &pc) in piv.iter().enumerate() {
                rows.set(i, pc, ctx.neg(self.basis.get(r, f)));
            }
        }
        Some(Subspace::from_rows(ctx, &rows).expect("nonzero kernel"))
    }

    pub fn join(&self, ctx: &FieldCtx, other: &Subspace) -> Result<Subspace> {
        let mut rows = self.basis.row_vecs();
        rows.extend(other.basis.row_vecs());
        Subspace::from_vecs(ctx, &rows)
    }

    /// Image of the subspace under a linear map given by its matrix acting on
    /// column vectors.
    pub fn map(&self, ctx: &FieldCtx, m: &Matrix) -> Result<Subspace> {
        let img = self.basis.mul(ctx, &m.transpose())?;
        Subspace::from_rows(ctx, &img)
    }

    pub fn key(&self) -> &[Elem] {
        self.basis.as_flat()
    }
}

pub fn span(ctx: &FieldCtx, points: &[ProjPoint]) -> Result<Subspace> {
    if points.is_empty() {
        return Err(Error::ZeroVector);
    }
    let rows: Vec<&[Elem]> = points.iter().map(|p| p.coords()).collect();
    Subspace::from_vecs(ctx, &rows)
}

/// Points of PG(n, q) in lexicographic order of their normalized coordinates.
pub fn enumerate_points(n: usize, ctx: &FieldCtx) -> impl Iterator<Item = Vec<Elem>> + '_ {
    let q = ctx.q() as u64;
    let total = point_count(n, ctx.q());
    (0..total).map(move |i| point_at(n, q as u32, i as usize))
}

pub fn point_count(n: usize, q: u32) -> u64 {
    ((q as u64).pow(n as u32 + 1) - 1) / (q as u64 - 1)
}

/// Position of a normalized vector in `enumerate_points` order.
pub fn point_index(q: u32, v: &[Elem]) -> usize {
    let lead = v.iter().position(|&x| x != 0).expect("nonzero vector");
    let t = v.len() - 1 - lead;
    let q = q as usize;
    let offset = (q.pow(t as u32) - 1) / (q - 1);
    let val = v[lead + 1..].iter().fold(0usize, |acc, &x| acc * q + x as usize);
    offset + val
}

pub fn point_at(n: usize, q: u32, idx: usize) -> Vec<Elem> {
    let q = q as usize;
    let mut t = 0usize;
    let mut offset = 0usize;
    while offset + q.pow(t as u32) <= idx {
        offset += q.pow(t as u32);
        t += 1;
    }
    let mut val = idx - offset;
    let mut v = vec![0 as Elem; n + 1];
    let lead = n - t;
    v[lead] = 1;
    for j in (lead + 1..=n).rev() {
        v[j] = (val % q) as Elem;
        val /= q;
    }
    v
}

/// Every `k`-dimensional vector subspace of GF(q)^n as a `k x n` RREF matrix,
/// ordered by pivot set and then by the free entries read as base-q digits.
pub fn enumerate_vector_subspaces(ctx: &FieldCtx, n: usize, k: usize) -> Vec<Matrix> {
    let mut out = Vec::new();
    if k == 0 || k > n {
        return out;
    }
    let q = ctx.q() as usize;
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| {
                let pv = pivots.clone();
                (pivots[i] + 1..n).filter(move |c| !pv.contains(c)).map(move |c| (i, c))
            })
            .collect();
        let count = q.pow(free.len() as u32);
        for mut val in 0..count {
            let mut m = Matrix::zeros(k, n);
            for (i, &p) in pivots.iter().enumerate() {
                m.set(i, p, 1);
            }
            for &(i, c) in free.iter().rev() {
                m.set(i, c, (val % q) as Elem);
                val /= q;
            }
            out.push(m);
        }
        // next pivot combination in lex order
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if pivots[i] < n - k + i {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// All lines contained in `s`, each exactly once.
pub fn enumerate_lines(ctx: &FieldCtx, s: &Subspace) -> Result<Vec<Subspace>> {
    subspaces_in(ctx, s, 2)
}

/// All subspaces of vector dimension `k` contained in `s`.
pub fn subspaces_in(ctx: &FieldCtx, s: &Subspace, k: usize) -> Result<Vec<Subspace>> {
    let m = s.basis.rows();
    if k > m {
        return Err(Error::DimensionMismatch { expected: k, got: m });
    }
    let cells = enumerate_vector_subspaces(ctx, m, k);
    let mut out = Vec::with_capacity(cells.len());
    for c in cells {
        // product of two RREF matrices with these shapes is again RREF
        let prod = c.mul(ctx, &s.basis)?;
        out.push(Subspace::from_rref_unchecked(prod));
    }
    Ok(out)
}

/// Number of k-dimensional subspaces of an n-dimensional space over GF(q).
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (q as u128).pow(n - i) - 1;
        den *= (q as u128).pow(i + 1) - 1;
    }
    (num / den) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u32) -> FieldCtx {
        FieldCtx::from_order(q).unwrap()
    }

    #[test]
    fn ranks() {
        let g3 = f(3);
        assert_eq!(matrix_rank(&g3, &Matrix::zeros(3, 3)), 0);
        assert_eq!(matrix_rank(&g3, &Matrix::identity(3)), 3);
        let g5 = f(5);
        let d = Matrix::from_rows(&[[1, 0, 0], [0, 1, 0], [0, 0, 0]]).unwrap();
        assert_eq!(matrix_rank(&g5, &d), 2);
    }

    #[test]
    fn det_and_inverse() {
        let g = f(7);
        let m = Matrix::from_rows(&[[1, 2, 3], [0, 1, 4], [5, 6, 0]]).unwrap();
        let inv = m.inverse(&g).unwrap();
        assert_eq!(m.mul(&g, &inv).unwrap(), Matrix::identity(3));
        assert_eq!(m.det(&g).unwrap(), 1);
        let s = Matrix::from_rows(&[[1, 2], [2, 4]]).unwrap();
        assert!(s.inverse(&g).is_none());
        assert_eq!(s.det(&g).unwrap(), 0);
    }

    #[test]
    fn span_examples() {
        let g = f(2);
        let a = ProjPoint::new(&g, vec![1, 0, 0, 0, 0, 0]).unwrap();
        let b = ProjPoint::new(&g, vec![0, 1, 1, 0, 0, 0]).unwrap();
        let l = span(&g, &[a.clone(), b.clone()]).unwrap();
        assert_eq!(l.dim(), 1);
        assert_eq!(l.points(&g).len(), 3);
        let c = ProjPoint::new(&g, vec![1, 1, 1, 0, 0, 0]).unwrap();
        assert_eq!(span(&g, &[a.clone(), b.clone(), c.clone()]).unwrap(), l);
        assert_eq!(span(&g, &[c.clone(), a.clone()]).unwrap(), l);
        let g3 = f(3);
        let frame: Vec<ProjPoint> = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]
            .iter()
            .map(|v| ProjPoint::new(&g3, v.to_vec()).unwrap())
            .collect();
        assert_eq!(span(&g3, &frame).unwrap(), Subspace::whole(2));
    }

    #[test]
    fn containment() {
        let g = f(3);
        let p = ProjPoint::new(&g, vec![0, 1, 2, 0]).unwrap();
        let s = span(&g, &[p.clone()]).unwrap();
        assert!(s.contains(&g, &p).unwrap());
        let h = Subspace::from_vecs(&g, &[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]).unwrap();
        let off = ProjPoint::new(&g, vec![0, 0, 0, 1]).unwrap();
        assert!(!h.contains(&g, &off).unwrap());
        assert!(Subspace::whole(3).contains(&g, &off).unwrap());
        assert!(matches!(h.contains_vec(&g, &[1, 0]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn point_counts() {
        assert_eq!(enumerate_points(5, &f(3)).count(), 364);
        assert_eq!(enumerate_points(2, &f(2)).count(), 7);
        assert_eq!(enumerate_points(3, &f(3)).count(), 40);
        for q in [2u32, 3, 4, 5, 7, 8, 9] {
            let g = f(q);
            for n in 0..=3usize {
                let pts: Vec<_> = enumerate_points(n, &g).collect();
                assert_eq!(pts.len() as u64, point_count(n, q));
                let mut sorted = pts.clone();
                sorted.sort();
                assert_eq!(sorted, pts, "lexicographic order");
                for (i, p) in pts.iter().enumerate() {
                    assert_eq!(point_index(q, p), i);
                }
            }
        }
    }

    #[test]
    fn line_counts() {
        let g2 = f(2);
        assert_eq!(enumerate_lines(&g2, &Subspace::whole(5)).unwrap().len(), 651);
        let g3 = f(3);
        assert_eq!(enumerate_lines(&g3, &Subspace::whole(5)).unwrap().len(), 11011);
        let h = Subspace::from_vecs(
            &g3,
            &[[1, 0, 0, 0, 0, 2], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 1], [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0]],
        )
        .unwrap();
        let lines = enumerate_lines(&g3, &h).unwrap();
        assert_eq!(lines.len(), 1210);
        let mut keys: Vec<_> = lines.iter().map(|l| l.key().to_vec()).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), 1210);
        for l in lines.iter().step_by(37) {
            assert!(h.contains_subspace(&g3, l).unwrap());
            assert_eq!(Subspace::from_rows(&g3, l.basis()).unwrap(), *l);
        }
        for q in [2u32, 3, 4, 5] {
            let g = f(q);
            for n in 1..=4u32 {
                for k in 1..=n {
                    assert_eq!(
                        enumerate_vector_subspaces(&g, n as usize, k as usize).len() as u64,
                        gaussian_binomial(n, k, q as u64)
                    );
                }
            }
        }
    }

    #[test]
    fn duals() {
        let g = f(5);
        let s = Subspace::from_vecs(&g, &[[1, 2, 0, 3, 0, 1], [0, 0, 1, 4, 4, 0]]).unwrap();
        let d = s.dual(&g).unwrap();
        assert_eq!(d.dim(), 3);
        for a in s.points(&g) {
            for b in d.points(&g) {
                assert_eq!(dot(&g, &a, &b), 0);
            }
        }
        assert_eq!(d.dual(&g).unwrap(), s);
        assert!(Subspace::whole(2).dual(&g).is_none());
    }

    #[test]
    fn collinearity_via_rank() {
        let g = f(3);
        let pts: Vec<Vec<Elem>> = enumerate_points(2, &g).collect();
        for a in &pts {
            for b in &pts {
                if a == b {
                    continue;
                }
                let l = Subspace::from_vecs(&g, &[a, b]).unwrap();
                for c in &pts {
                    let r = rank_of(&g, &[a, b, c]);
                    assert_eq!(l.contains_vec(&g, c).unwrap(), r <= 2);
                }
            }
        }
    }
}
