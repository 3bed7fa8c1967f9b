//! Closed forms and contour quadrature against high-precision reference
//! values (`data/reference.json`, produced by `data/reference.py` with
//! 600-digit arithmetic from the direct subset sum).

use serde_json::Value;
use subentropy::entropy::{self, interpolant};
use subentropy::oracles::{contour_interpolant, contour_r, ContourConfig};
use subentropy::Spectrum;

struct Case {
    name: String,
    spectrum: Spectrum,
    r: Vec<f64>,
    alpha: Vec<(f64, f64)>,
}

fn cases() -> Vec<Case> {
    let text = include_str!("data/reference.json");
    let doc: Value = serde_json::from_str(text).unwrap();
    doc["cases"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            let floats = |v: &Value| -> Vec<f64> {
                v.as_array()
                    .unwrap()
                    .iter()
                    .map(|x| x.as_f64().unwrap())
                    .collect()
            };
            Case {
                name: c["name"].as_str().unwrap().to_string(),
                spectrum: Spectrum::new(floats(&c["spectrum"])).unwrap(),
                r: floats(&c["r"]),
                alpha: c["alpha"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|p| (p[0].as_f64().unwrap(), p[1].as_f64().unwrap()))
                    .collect(),
            }
        })
        .collect()
}

#[test]
fn closed_form_matches_reference() {
    let mut worst = 0.0f64;
    for case in cases() {
        let got = entropy::all_r(&case.spectrum).unwrap();
        for (r, (g, w)) in got.iter().zip(&case.r).enumerate() {
            let err = (g - w).abs();
            worst = worst.max(err);
            assert!(
                err < 1e-12,
                "{} r={}: {g} vs {w} (err {err:e})",
                case.name,
                r + 1
            );
        }
        for &(alpha, want) in &case.alpha {
            let g = interpolant(&case.spectrum, alpha).unwrap();
            assert!((g - want).abs() < 1e-12, "{} alpha={alpha}", case.name);
        }
    }
    println!("worst closed-form error {worst:e}");
}

#[test]
fn contour_matches_reference() {
    let cfg = ContourConfig::default();
    let mut worst = 0.0f64;
    for case in cases() {
        for (idx, &want) in case.r.iter().enumerate() {
            let got = contour_r(&case.spectrum, idx + 1, &cfg).unwrap().value;
            let err = (got - want).abs();
            worst = worst.max(err);
            assert!(err < 1e-10, "{} r={}: {got} vs {want}", case.name, idx + 1);
        }
        for &(alpha, want) in &case.alpha {
            let got = contour_interpolant(&case.spectrum, alpha, &cfg)
                .unwrap()
                .value;
            assert!(
                (got - want).abs() < 1e-10,
                "{} alpha={alpha}: {got} vs {want}",
                case.name
            );
        }
    }
    println!("worst contour error {worst:e}");
}
