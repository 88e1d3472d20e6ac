//! A field context bundled with lazily built lookup tables over PG(5, q).

use std::sync::OnceLock;

use rayon::prelude::*;

use crate::conics::ConicType;
use crate::error::{Error, Result};
use crate::gf::{Elem, FieldCtx};
use crate::pglinalg::{dot, enumerate_points, point_at, point_count, point_index, rank_of};
use crate::veronese::{nu, point_label, PointOrbitLabel};

pub struct Geometry {
    field: FieldCtx,
    plane_points: Vec<[Elem; 3]>,
    nu_points: Vec<[Elem; 6]>,
    point_labels: OnceLock<Vec<PointOrbitLabel>>,
    conic_types: OnceLock<Vec<ConicType>>,
}

impl std::fmt::Debug for Geometry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Geometry(q = {})", self.field.q())
    }
}

impl Geometry {
    pub fn new(q: u32) -> Result<Self> {
        Ok(Self::from_field(FieldCtx::from_order(q)?))
    }

    pub fn from_field(field: FieldCtx) -> Self {
        let plane_points: Vec<[Elem; 3]> = enumerate_points(2, &field).map(|v| [v[0], v[1], v[2]]).collect();
        let nu_points = plane_points.iter().map(|u| nu(&field, u)).collect();
        Geometry { field, plane_points, nu_points, point_labels: OnceLock::new(), conic_types: OnceLock::new() }
    }

    #[inline]
    pub fn field(&self) -> &FieldCtx {
        &self.field
    }
    #[inline]
    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn plane_points(&self) -> &[[Elem; 3]] {
        &self.plane_points
    }

    /// Number of points of PG(5, q).
    pub fn size(&self) -> usize {
        point_count(5, self.q()) as usize
    }

    fn labels(&self) -> &[PointOrbitLabel] {
        self.point_labels.get_or_init(|| {
            (0..self.size())
                .into_par_iter()
                .map(|i| {
                    let y: [Elem; 6] = point_at(5, self.q(), i).try_into().unwrap();
                    point_label(&self.field, &y).unwrap()
                })
                .collect()
        })
    }

    fn types(&self) -> &[ConicType] {
        self.conic_types.get_or_init(|| {
            (0..self.size())
                .into_par_iter()
                .map(|i| {
                    let a: [Elem; 6] = point_at(5, self.q(), i).try_into().unwrap();
                    self.classify_form_direct(&a).unwrap()
                })
                .collect()
        })
    }

    /// Point-orbit label of a normalized coordinate vector.
    #[inline]
    pub fn point_label(&self, y: &[Elem]) -> PointOrbitLabel {
        self.labels()[point_index(self.q(), y)]
    }

    /// Conic type of a normalized form coefficient vector.
    #[inline]
    pub fn conic_type(&self, a: &[Elem]) -> ConicType {
        self.types()[point_index(self.q(), a)]
    }

    /// Zero-locus classification without the lookup table.
    pub fn classify_form_direct(&self, a: &[Elem; 6]) -> Result<ConicType> {
        if a.iter().all(|&x| x == 0) {
            return Err(Error::ZeroForm);
        }
        let ctx = &self.field;
        let q = self.q() as usize;
        let mut zeros: Vec<usize> = Vec::with_capacity(2 * q + 1);
        for (i, v) in self.nu_points.iter().enumerate() {
            if dot(ctx, a, v) == 0 {
                zeros.push(i);
            }
        }
        match zeros.len() {
            1 => Ok(ConicType::ImaginaryPair),
            n if n == 2 * q + 1 => Ok(ConicType::RealPair),
            n if n == q + 1 => {
                let p = |k: usize| &self.plane_points[zeros[k]][..];
                if rank_of(ctx, &[p(0), p(1), p(2)]) == 2 {
                    Ok(ConicType::DoubleLine)
                } else {
                    Ok(ConicType::NonSingular)
                }
            }
            n => Err(Error::Inconsistent(format!("conic with {n} points over GF({q})"))),
        }
    }
}
