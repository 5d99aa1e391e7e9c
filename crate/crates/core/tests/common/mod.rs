//! Shared test groups and brute-force oracles.
#![allow(dead_code)]

use clterm::cyclo::{parse_cyclotomic, CyclotomicNumber};
use clterm::matgrp::{CycMatrix, FiniteMatrixGroup, DEFAULT_MAX_SIZE};
use num_traits::ToPrimitive;

pub fn mat(rows: &[&[&str]]) -> CycMatrix {
    CycMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|s| parse_cyclotomic(s).unwrap()).collect())
            .collect(),
    )
    .unwrap()
}

pub fn diag(entries: &[&str]) -> CycMatrix {
    CycMatrix::diagonal(
        entries
            .iter()
            .map(|s| parse_cyclotomic(s).unwrap())
            .collect(),
    )
}

pub fn close(gens: &[CycMatrix]) -> FiniteMatrixGroup {
    FiniteMatrixGroup::close(gens, DEFAULT_MAX_SIZE).unwrap()
}

/// ⟨diag(−1, −1, −ζ₃, −ζ₃²)⟩ ≤ SL₄, order 6.
pub fn order_six_generator() -> CycMatrix {
    diag(&["-1", "-1", "-E(3)", "-E(3)^2"])
}

pub fn order_six_group() -> FiniteMatrixGroup {
    close(&[order_six_generator()])
}

pub fn quaternion_generators() -> Vec<CycMatrix> {
    vec![
        mat(&[&["E(4)", "0"], &["0", "-E(4)"]]),
        mat(&[&["0", "1"], &["-1", "0"]]),
    ]
}

pub fn quaternion_group() -> FiniteMatrixGroup {
    close(&quaternion_generators())
}

const SQRT5: &str = "(E(5)+E(5)^4-E(5)^2-E(5)^3)";

/// Binary icosahedral group in SL₂(Q(ζ₅)).
pub fn icosahedral_generators() -> Vec<CycMatrix> {
    let a = format!("-(E(5)-E(5)^4)/{SQRT5}");
    let b = format!("(E(5)^2-E(5)^3)/{SQRT5}");
    let c = format!("(E(5)-E(5)^4)/{SQRT5}");
    vec![
        diag(&["E(5)^3", "E(5)^2"]),
        mat(&[&[a.as_str(), b.as_str()], &[b.as_str(), c.as_str()]]),
    ]
}

/// {diag(g, g) : g binary icosahedral} ≤ SL₄.
pub fn icosahedral_diagonal_generators() -> Vec<CycMatrix> {
    icosahedral_generators()
        .iter()
        .map(|g| {
            let z = "0".to_string();
            let e = |i: usize, j: usize| g.get(i, j).render();
            let rows = [
                vec![e(0, 0), e(0, 1), z.clone(), z.clone()],
                vec![e(1, 0), e(1, 1), z.clone(), z.clone()],
                vec![z.clone(), z.clone(), e(0, 0), e(0, 1)],
                vec![z.clone(), z.clone(), e(1, 0), e(1, 1)],
            ];
            let refs: Vec<Vec<&str>> = rows
                .iter()
                .map(|r| r.iter().map(String::as_str).collect())
                .collect();
            let refs: Vec<&[&str]> = refs.iter().map(Vec::as_slice).collect();
            mat(&refs)
        })
        .collect()
}

/// ⟨diag(ζ_k, ζ_k⁻¹)⟩ ≤ SL₂.
pub fn cyclic_sl2(k: u32) -> CycMatrix {
    diag(&[&format!("E({k})"), &format!("E({k})^{}", k - 1)])
}

/// S₃ as 3×3 permutation matrices (a GL group generated by reflections).
pub fn s3_permutation_generators() -> Vec<CycMatrix> {
    vec![
        mat(&[&["0", "1", "0"], &["1", "0", "0"], &["0", "0", "1"]]),
        mat(&[&["0", "0", "1"], &["1", "0", "0"], &["0", "1", "0"]]),
    ]
}

/// ⟨diag(ζ₅, ζ₅², ζ₅³, ζ₅⁴)⟩ ≤ SL₄: every nontrivial element has age 2.
pub fn terminal_cyclic_generator() -> CycMatrix {
    diag(&["E(5)", "E(5)^2", "E(5)^3", "E(5)^4"])
}

/// ⟨diag(ζ₁₅, ζ₁₅², ζ₁₅¹²)⟩ ≤ SL₃, whose junior set changes under twisting.
pub fn order_fifteen_generator() -> CycMatrix {
    diag(&["E(15)", "E(15)^2", "E(15)^12"])
}

/// ⟨diag(ζ₇, ζ₇², ζ₇⁴)⟩ ≤ SL₃.
pub fn klein_seven_generator() -> CycMatrix {
    diag(&["E(7)", "E(7)^2", "E(7)^4"])
}

/// Value of a cyclotomic number at ζ_N = exp(2πi/N).
pub fn to_complex(x: &CyclotomicNumber) -> (f64, f64) {
    let n = x.conductor() as f64;
    x.coeffs()
        .iter()
        .enumerate()
        .fold((0.0, 0.0), |(re, im), (k, c)| {
            let c = c.to_f64().unwrap();
            let t = 2.0 * std::f64::consts::PI * k as f64 / n;
            (re + c * t.cos(), im + c * t.sin())
        })
}

pub fn complex_close(a: (f64, f64), b: (f64, f64)) -> bool {
    (a.0 - b.0).abs() < 1e-9 && (a.1 - b.1).abs() < 1e-9
}

pub fn cmul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

/// Closure by repeated multiplication of whole sets, with no ids or tables.
pub fn naive_closure(gens: &[CycMatrix]) -> Vec<CycMatrix> {
    let mut elems = vec![CycMatrix::identity(gens[0].dim())];
    loop {
        let mut grew = false;
        for x in elems.clone() {
            for g in gens {
                let y = x.mul(g).unwrap();
                if !elems.contains(&y) {
                    elems.push(y);
                    grew = true;
                }
            }
        }
        if !grew {
            return elems;
        }
    }
}

/// Block-diagonal abelian group ⟨diag(ζ_{c₁}), …, diag(ζ_{c_k})⟩ with one generator per factor.
pub fn diagonal_abelian_generators(cyclic: &[u32]) -> Vec<CycMatrix> {
    let n = cyclic.len();
    (0..n)
        .map(|i| {
            let entries: Vec<CyclotomicNumber> = (0..n)
                .map(|j| {
                    if i == j {
                        CyclotomicNumber::root_of_unity(cyclic[i], 1)
                    } else {
                        CyclotomicNumber::one()
                    }
                })
                .collect();
            CycMatrix::diagonal(entries)
        })
        .collect()
}
