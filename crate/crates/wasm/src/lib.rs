//! Small browser front end: each export takes text input and returns a JSON string.

use serde_json::json;
use wasm_bindgen::prelude::*;

use veronese_core::conics::{classify_conic, parse_elements, zero_locus, TernaryForm};
use veronese_core::lineclass::LineClassifier;
use veronese_core::pglinalg::{Matrix, Subspace};
use veronese_core::systems::{od4_of_line, od4_of_point};
use veronese_core::veronese::{classify_point as point_label, SymPoint};
use veronese_core::{Geometry, HyperplaneOrbitLabel, Result};

fn finish(r: Result<serde_json::Value>) -> std::result::Result<String, String> {
    r.map(|v| v.to_string()).map_err(|e| e.to_string())
}

/// Orbit label, rank and hyperplane distribution of a point of PG(5, q).
#[wasm_bindgen]
pub fn classify_point(q: u32, coords: &str) -> std::result::Result<String, String> {
    finish((|| {
        let geo = Geometry::new(q)?;
        let ctx = geo.field();
        let p = SymPoint::parse(ctx, coords)?;
        Ok(json!({
            "q": q,
            "label": point_label(ctx, &p).name(),
            "rank": p.rank(ctx),
            "od4": od4_of_point(&geo, &p),
        }))
    })())
}

/// Orbit label and both distributions of the line through two points.
#[wasm_bindgen]
pub fn classify_line(q: u32, first: &str, second: &str) -> std::result::Result<String, String> {
    finish((|| {
        let geo = Geometry::new(q)?;
        let ctx = geo.field();
        let rows = [parse_elements(ctx, first, 6)?, parse_elements(ctx, second, 6)?];
        let l = Subspace::from_independent(ctx, &Matrix::from_rows(&rows)?)?;
        let (label, od0) = LineClassifier::new(&geo).classify_with_od0(&l)?;
        Ok(json!({
            "q": q,
            "label": label.name(),
            "od0": od0,
            "od4": od4_of_line(&geo, &l)?,
        }))
    })())
}

/// Type of a conic and its zeros in PG(2, q).
#[wasm_bindgen]
pub fn conic_locus(q: u32, coeffs: &str) -> std::result::Result<String, String> {
    finish((|| {
        let geo = Geometry::new(q)?;
        let ctx = geo.field();
        let f = TernaryForm::parse(ctx, coeffs)?;
        let t = classify_conic(ctx, &f)?;
        Ok(json!({
            "q": q,
            "form": f.to_string(),
            "type": HyperplaneOrbitLabel::from_conic(t).name(),
            "zeros": zero_locus(ctx, &f),
        }))
    })())
}
