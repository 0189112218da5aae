//! Browser bindings for germlab. Every export takes plain strings or numbers
//! and returns a JSON string; failures come back as `{"error": "..."}`.

use germlab::connectivity::{
    analyze, window_discriminant, window_double_points, window_image, window_km, DSpec, DegreeWindow, InstDim,
};
use germlab::germs::GermFile;
use germlab::monodromy::{jordan_data, monodromy_bounds, root_of_unity_certificate, MatrixFile};
use germlab::Result;
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

fn finish(r: Result<Value>) -> String {
    let v = r.unwrap_or_else(|e| json!({ "error": e.to_string() }));
    serde_json::to_string(&v).expect("JSON values serialise")
}

fn window_json(w: &DegreeWindow) -> Value {
    json!({ "theorem": w.theorem.to_string(), "degrees": w.degrees })
}

pub fn degree_windows_json(n: usize, p: usize, d: &str) -> Result<Value> {
    let d: InstDim = d.trim().parse()?;
    let (windows, note) = if p <= n {
        (vec![window_discriminant(n, p, d)?], None)
    } else if p == n + 1 {
        (vec![window_image(n, d), window_double_points(n, d)?], None)
    } else {
        (
            vec![window_km(n, p, d, false)?, window_km(n, p, d, true)?],
            Some("assumes the germ is dimensionally correct"),
        )
    };
    Ok(json!({
        "n": n,
        "p": p,
        "d": d.to_string(),
        "windows": windows.iter().map(window_json).collect::<Vec<_>>(),
        "note": note,
    }))
}

pub fn analyze_germ_json(germ: &str, d: &str) -> Result<Value> {
    let file = GermFile::from_json_str(germ)?;
    let d: DSpec = d.trim().parse()?;
    let a = analyze(&file.germ, d, None, file.unfolding.as_ref())?;
    Ok(serde_json::to_value(&a).expect("analysis serialises"))
}

pub fn jordan_json(matrix: &str) -> Result<Value> {
    let (_, h) = MatrixFile::from_json_str(matrix)?;
    let j = jordan_data(&h)?;
    Ok(json!({
        "jordan": j,
        "supp": j.supp().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "max_jordan": j.max_jordan(),
        "root_of_unity_certificate": root_of_unity_certificate(&h, &j),
    }))
}

pub fn bounds_json(n: u64, p: u64, ell: u64, isolated: bool) -> Result<Value> {
    Ok(serde_json::to_value(monodromy_bounds(n, p, ell, isolated)?).expect("bounds serialise"))
}

/// Vanishing windows for source dimension `n`, target dimension `p` and
/// instability dimension `d` (an integer or `empty`).
#[wasm_bindgen]
pub fn degree_windows(n: usize, p: usize, d: &str) -> String {
    finish(degree_windows_json(n, p, d))
}

/// Full analysis of a germ file; `d` is an integer, `empty` or `auto-bigerm`.
#[wasm_bindgen]
pub fn analyze_germ(germ: &str, d: &str) -> String {
    finish(analyze_germ_json(germ, d))
}

/// Jordan data of a matrix given as JSON rows of rational strings.
#[wasm_bindgen]
pub fn jordan(matrix: &str) -> String {
    finish(jordan_json(matrix))
}

/// Jordan block bounds in degree `ell`.
#[wasm_bindgen]
pub fn bounds(n: u32, p: u32, ell: u32, isolated: bool) -> String {
    finish(bounds_json(n.into(), p.into(), ell.into(), isolated))
}
