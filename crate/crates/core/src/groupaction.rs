//! PGL(3, q) acting on PG(5, q) through `M -> A M A^T`, and a brute-force
//! orbit oracle.

use std::collections::{HashMap, VecDeque};

use rand::Rng;
use serde::Serialize;

use crate::conics::TernaryForm;
use crate::error::{Error, Result};
use crate::gf::{Elem, FieldCtx};
use crate::pglinalg::{enumerate_lines, enumerate_points, normalize, Matrix, Subspace};
use crate::veronese::{sym_coords, sym_matrix, SymPoint};

pub const DEFAULT_ORACLE_BOUND: u32 = 5;

/// An element of PGL(3, q): an invertible matrix scaled so that its first
/// nonzero entry in row-major order is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    a: [Elem; 9],
}

impl GroupElement {
    pub fn new(ctx: &FieldCtx, m: &Matrix) -> Result<Self> {
        if m.rows() != 3 || m.cols() != 3 {
            return Err(Error::DimensionMismatch { expected: 3, got: m.rows() });
        }
        if m.det(ctx)? == 0 {
            return Err(Error::DependentGenerators);
        }
        let mut a: [Elem; 9] = m.as_flat().try_into().unwrap();
        normalize(ctx, &mut a);
        Ok(GroupElement { a })
    }

    pub fn identity() -> Self {
        GroupElement { a: [1, 0, 0, 0, 1, 0, 0, 0, 1] }
    }

    pub fn matrix(&self) -> Matrix {
        Matrix::from_flat(3, 3, self.a.to_vec()).unwrap()
    }

    pub fn entries(&self) -> [Elem; 9] {
        self.a
    }

    pub fn compose(&self, ctx: &FieldCtx, other: &GroupElement) -> GroupElement {
        GroupElement::new(ctx, &self.matrix().mul(ctx, &other.matrix()).unwrap()).unwrap()
    }

    pub fn inverse(&self, ctx: &FieldCtx) -> GroupElement {
        GroupElement::new(ctx, &self.matrix().inverse(ctx).unwrap()).unwrap()
    }

    /// The 6x6 matrix of `y -> coords(A M_y A^T)` acting on column vectors.
    pub fn lifted(&self, ctx: &FieldCtx) -> Matrix {
        let a = self.matrix();
        let at = a.transpose();
        let mut out = Matrix::zeros(6, 6);
        for j in 0..6 {
            let mut e = [0 as Elem; 6];
            e[j] = 1;
            let img = a.mul(ctx, &sym_matrix(&e)).unwrap().mul(ctx, &at).unwrap();
            for (i, c) in sym_coords(&img).into_iter().enumerate() {
                out.set(i, j, c);
            }
        }
        out
    }
}

fn apply6(ctx: &FieldCtx, l: &Matrix, y: &[Elem]) -> [Elem; 6] {
    std::array::from_fn(|i| (0..6).fold(0, |acc, j| ctx.add(acc, ctx.mul(l.get(i, j), y[j]))))
}

pub fn act_on_point(ctx: &FieldCtx, g: &GroupElement, p: &SymPoint) -> SymPoint {
    SymPoint::new(ctx, apply6(ctx, &g.lifted(ctx), &p.coords())).unwrap()
}

/// The form `u -> f(A^{-1} u)`, so that incidence with points is preserved.
pub fn act_on_form(ctx: &FieldCtx, g: &GroupElement, f: &TernaryForm) -> TernaryForm {
    f.substitute(ctx, &g.inverse(ctx).matrix())
}

pub fn act_on_subspace(ctx: &FieldCtx, g: &GroupElement, s: &Subspace) -> Subspace {
    s.map(ctx, &g.lifted(ctx)).unwrap()
}

/// Every element of PGL(3, q), in row-major lexicographic order.
pub fn enumerate_group(ctx: &FieldCtx, bound: u32) -> Result<Vec<GroupElement>> {
    let q = ctx.q();
    if q > bound {
        return Err(Error::OracleBound { q, bound });
    }
    let total = (q as usize).pow(9);
    let mut out = Vec::new();
    let mut a = [0 as Elem; 9];
    for mut n in 0..total {
        for x in a.iter_mut().rev() {
            *x = (n % q as usize) as Elem;
            n /= q as usize;
        }
        if a.iter().find(|&&x| x != 0) != Some(&1) {
            continue;
        }
        let m = Matrix::from_flat(3, 3, a.to_vec()).unwrap();
        if m.det(ctx)? != 0 {
            out.push(GroupElement { a });
        }
    }
    Ok(out)
}

pub fn group_order(q: u64) -> u64 {
    q.pow(3) * (q.pow(3) - 1) * (q * q - 1)
}

/// A transvection, a primitive diagonal element, the 3-cycle and a transposition.
pub fn generators(ctx: &FieldCtx) -> Vec<GroupElement> {
    let w = ctx.primitive();
    let mats: [[Elem; 9]; 4] = [
        [1, 1, 0, 0, 1, 0, 0, 0, 1],
        [w, 0, 0, 0, 1, 0, 0, 0, 1],
        [0, 0, 1, 1, 0, 0, 0, 1, 0],
        [0, 1, 0, 1, 0, 0, 0, 0, 1],
    ];
    mats.iter().map(|m| GroupElement::new(ctx, &Matrix::from_flat(3, 3, m.to_vec()).unwrap()).unwrap()).collect()
}

/// Size of the subgroup generated by `gens`, by closure from the identity.
pub fn closure_size(ctx: &FieldCtx, gens: &[GroupElement]) -> usize {
    let mut seen = std::collections::HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(GroupElement::identity());
    queue.push_back(GroupElement::identity());
    while let Some(g) = queue.pop_front() {
        for h in gens {
            let k = g.compose(ctx, h);
            if seen.insert(k.clone()) {
                queue.push_back(k);
            }
        }
    }
    seen.len()
}

pub fn random_element<R: Rng + ?Sized>(ctx: &FieldCtx, rng: &mut R) -> GroupElement {
    let q = ctx.q();
    loop {
        let m = Matrix::from_flat(3, 3, (0..9).map(|_| rng.gen_range(0..q) as Elem).collect()).unwrap();
        if let Ok(g) = GroupElement::new(ctx, &m) {
            return g;
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Orbit {
    pub id: usize,
    pub size: usize,
    /// Basis rows of the lexicographically smallest member.
    pub representative: Vec<Vec<Elem>>,
}

#[derive(Debug, Clone)]
pub struct OrbitPartition {
    pub orbits: Vec<Orbit>,
    index: HashMap<Vec<Elem>, usize>,
}

impl OrbitPartition {
    pub fn orbit_of(&self, s: &Subspace) -> Option<usize> {
        self.index.get(s.key()).copied()
    }

    pub fn total(&self) -> usize {
        self.orbits.iter().map(|o| o.size).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .orbits
            .iter()
            .map(|o| {
                (o.id.to_string(), serde_json::json!({"size": o.size, "representative": o.representative}))
            })
            .collect();
        serde_json::Value::Object(map)
    }
}

/// Partition of `items` under the group generated by `gens`, explored
/// breadth-first from each unvisited item in input order.
pub fn orbit_partition(ctx: &FieldCtx, items: &[Subspace], gens: &[GroupElement]) -> Result<OrbitPartition> {
    let lifts: Vec<Matrix> = gens.iter().map(|g| g.lifted(ctx)).collect();
    let lookup: HashMap<Vec<Elem>, usize> = items.iter().enumerate().map(|(i, s)| (s.key().to_vec(), i)).collect();
    let mut orbit_of = vec![usize::MAX; items.len()];
    let mut orbits = Vec::new();
    for start in 0..items.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        orbit_of[start] = id;
        let mut queue = VecDeque::from([start]);
        let mut members = vec![start];
        while let Some(i) = queue.pop_front() {
            for l in &lifts {
                let img = items[i].map(ctx, l)?;
                let j = *lookup
                    .get(img.key())
                    .ok_or_else(|| Error::Inconsistent("group image outside the swept set".into()))?;
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = id;
                    members.push(j);
                    queue.push_back(j);
                }
            }
        }
        let rep = members.iter().map(|&m| items[m].key()).min().unwrap();
        let rep_idx = members.iter().copied().find(|&m| items[m].key() == rep).unwrap();
        orbits.push(Orbit { id, size: members.len(), representative: items[rep_idx].basis().row_vecs() });
    }
    let index = lookup.into_iter().map(|(k, i)| (k, orbit_of[i])).collect();
    Ok(OrbitPartition { orbits, index })
}

pub fn orbit_partition_lines(ctx: &FieldCtx, bound: u32) -> Result<OrbitPartition> {
    if ctx.q() > bound {
        return Err(Error::OracleBound { q: ctx.q(), bound });
    }
    let lines = enumerate_lines(ctx, &Subspace::whole(5))?;
    orbit_partition(ctx, &lines, &generators(ctx))
}

pub fn orbit_partition_points(ctx: &FieldCtx, bound: u32) -> Result<OrbitPartition> {
    if ctx.q() > bound {
        return Err(Error::OracleBound { q: ctx.q(), bound });
    }
    let pts: Vec<Subspace> =
        enumerate_points(5, ctx).map(|v| Subspace::from_vecs(ctx, &[v]).unwrap()).collect();
    orbit_partition(ctx, &pts, &generators(ctx))
}
