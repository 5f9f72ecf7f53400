//! Random instances and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use bundlex::autgroup::{
    AutomorphismWord, CMatrix, ElementaryAutomorphism, MultivariatePolynomial,
};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use serde_json::Value;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn rand_c<R: Rng>(rng: &mut R, scale: f64) -> Complex64 {
    c(rng.random_range(-scale..scale), rng.random_range(-scale..scale))
}

/// Random polynomial in `n` variables avoiding `skip`, with total degree
/// between 1 and `max_deg` and coefficients scaled down with the degree so
/// that values stay moderate on the polydisc of radius 2.
pub fn rand_poly<R: Rng>(rng: &mut R, n: usize, skip: usize, max_deg: u32) -> MultivariatePolynomial {
    let nterms = rng.random_range(1..=3);
    let terms = (0..nterms).map(|_| {
        let deg = rng.random_range(1..=max_deg);
        let mut e = vec![0u32; n];
        for _ in 0..deg {
            let mut v = rng.random_range(0..n - 1);
            if v >= skip {
                v += 1;
            }
            e[v] += 1;
        }
        let scale = 0.5 / 2f64.powi(deg as i32);
        (e, rand_c(rng, scale))
    });
    MultivariatePolynomial::from_terms(n, terms.collect::<Vec<_>>()).unwrap()
}

/// Random well-conditioned affine map.
pub fn rand_affine<R: Rng>(rng: &mut R, n: usize) -> ElementaryAutomorphism {
    let m = CMatrix::from_fn(n, n, |i, j| {
        let d = if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) };
        d + rand_c(rng, 0.4)
    });
    let b = (0..n).map(|_| rand_c(rng, 0.5)).collect();
    ElementaryAutomorphism::affine(m, b).unwrap()
}

pub fn rand_elementary<R: Rng>(rng: &mut R, n: usize, max_deg: u32, over_shears: bool) -> ElementaryAutomorphism {
    let kinds = if over_shears { 3 } else { 2 };
    match rng.random_range(0..kinds) {
        0 => rand_affine(rng, n),
        1 => {
            let axis = rng.random_range(0..n);
            ElementaryAutomorphism::shear(axis, rand_poly(rng, n, axis, max_deg)).unwrap()
        }
        _ => {
            let axis = rng.random_range(0..n);
            ElementaryAutomorphism::over_shear(axis, rand_poly(rng, n, axis, max_deg.min(2))).unwrap()
        }
    }
}

pub fn rand_word<R: Rng>(rng: &mut R, n: usize, max_len: usize, max_deg: u32, over_shears: bool) -> AutomorphismWord {
    let len = rng.random_range(1..=max_len);
    let factors = (0..len)
        .map(|_| rand_elementary(rng, n, max_deg, over_shears))
        .collect();
    AutomorphismWord::new(n, factors).unwrap()
}

/// Direct evaluation of an elementary, written out from its definition.
pub fn eval_elementary_oracle(e: &ElementaryAutomorphism, z: &[Complex64]) -> Vec<Complex64> {
    let mut out = z.to_vec();
    let eval_q = |q: &MultivariatePolynomial| -> Complex64 {
        q.terms()
            .map(|(exps, coeff)| {
                exps.iter()
                    .zip(z)
                    .fold(coeff, |acc, (&k, &zi)| acc * zi.powu(k))
            })
            .sum()
    };
    match e {
        ElementaryAutomorphism::Affine {
            matrix,
            translation,
        } => {
            for (i, o) in out.iter_mut().enumerate() {
                *o = translation[i] + (0..z.len()).map(|j| matrix[(i, j)] * z[j]).sum::<Complex64>();
            }
        }
        ElementaryAutomorphism::Shear { axis, q } => out[*axis] += eval_q(q),
        ElementaryAutomorphism::OverShear { axis, q } => out[*axis] *= eval_q(q).exp(),
    }
    out
}

pub fn eval_word_oracle(w: &AutomorphismWord, z: &[Complex64]) -> Vec<Complex64> {
    w.factors()
        .iter()
        .fold(z.to_vec(), |acc, e| eval_elementary_oracle(e, &acc))
}

/// `M = V diag(λ) V⁻¹` with eigenvalues away from the negative real axis,
/// together with its principal logarithm `V diag(Log λ) V⁻¹`.
pub fn rand_diagonalizable<R: Rng>(rng: &mut R, n: usize) -> (CMatrix, CMatrix) {
    let v = CMatrix::from_fn(n, n, |i, j| {
        let d = if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) };
        d + rand_c(rng, 0.5)
    });
    let v_inv = v.clone().try_inverse().unwrap();
    let lambdas: Vec<Complex64> = (0..n)
        .map(|_| {
            let r = rng.random_range(0.3..3.0);
            let theta = rng.random_range(-0.9 * PI..0.9 * PI);
            Complex64::from_polar(r, theta)
        })
        .collect();
    let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(lambdas.clone()));
    let l = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(
        lambdas.iter().map(|x| x.ln()).collect(),
    ));
    (&v * d * &v_inv, &v * l * &v_inv)
}

pub fn max_entry_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Paths (as JSON pointers) of every `[re, im]` number pair inside the
/// transition words of a serialized extension, skipping chart geometry.
pub fn coefficient_slots(ext: &Value) -> Vec<String> {
    fn walk(v: &Value, path: String, out: &mut Vec<String>) {
        match v {
            Value::Array(a) if a.len() == 2 && a.iter().all(Value::is_f64) => {
                out.push(format!("{path}/0"));
                out.push(format!("{path}/1"));
            }
            Value::Array(a) => {
                for (i, x) in a.iter().enumerate() {
                    walk(x, format!("{path}/{i}"), out);
                }
            }
            Value::Object(m) => {
                for (k, x) in m {
                    if k != "chart" {
                        walk(x, format!("{path}/{k}"), out);
                    }
                }
            }
            _ => {}
        }
    }
    let mut out = Vec::new();
    if let Some(ts) = ext["transitions"].as_array() {
        for (i, t) in ts.iter().enumerate() {
            walk(&t["word"], format!("/transitions/{i}/word"), &mut out);
        }
    }
    out
}

pub fn perturb(v: &mut Value, pointer: &str, delta: f64) {
    let x = v.pointer_mut(pointer).expect("slot exists");
    let old = x.as_f64().expect("number");
    *x = Value::from(old + delta);
}

/// Walks a serialized extension and returns `(max polynomial degree of any
/// elementary or flow, number of over-shear factors)`, reading only the
/// JSON.
pub fn json_degree_scan(ext: &Value) -> (u64, usize) {
    fn poly_degree(q: &Value) -> u64 {
        q.as_array()
            .map(|terms| {
                terms
                    .iter()
                    .map(|t| {
                        t["exponents"]
                            .as_array()
                            .unwrap()
                            .iter()
                            .map(|e| e.as_u64().unwrap())
                            .sum::<u64>()
                    })
                    .max()
                    .unwrap_or(0)
                    .max(1)
            })
            .unwrap_or(1)
    }
    fn walk(v: &Value, acc: &mut (u64, usize)) {
        match v {
            Value::Object(m) => {
                match m.get("kind").and_then(Value::as_str) {
                    Some("over_shear") | Some("over_shear_flow") => acc.1 += 1,
                    Some("shear") | Some("shear_flow") => acc.0 = acc.0.max(poly_degree(&m["q"])),
                    Some("affine") | Some("linear_flow") | Some("affine_flow") => acc.0 = acc.0.max(1),
                    _ => {}
                }
                for x in m.values() {
                    walk(x, acc);
                }
            }
            Value::Array(a) => a.iter().for_each(|x| walk(x, acc)),
            _ => {}
        }
    }
    let mut acc = (0, 0);
    walk(&ext["transitions"], &mut acc);
    walk(&ext["identities"], &mut acc);
    acc
}
