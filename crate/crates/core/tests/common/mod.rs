#![allow(dead_code)]

use num_complex::Complex64;

use nlqw::coin::{Matrix2, PauliVector};

pub type M2 = [[Complex64; 2]; 2];

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn pauli_matrix(s: &PauliVector) -> M2 {
    let [s0, s1, s2, s3] = s.0;
    [[c(s0 + s3, 0.0), c(s1, -s2)], [c(s1, s2), c(s0 - s3, 0.0)]]
}

fn mul(a: &M2, b: &M2) -> M2 {
    let mut out = [[c(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// `e^A` by scaling and squaring with a 30-term Taylor series.
pub fn expm(a: &M2) -> M2 {
    let norm = a.iter().flatten().map(|z| z.norm()).sum::<f64>();
    let squarings = norm.log2().ceil().max(0.0) as u32 + 1;
    let scale = 2f64.powi(-(squarings as i32));
    let x = a.map(|row| row.map(|z| z * scale));
    let mut term = [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]];
    let mut sum = term;
    for k in 1..30 {
        term = mul(&term, &x).map(|row| row.map(|z| z / k as f64));
        for i in 0..2 {
            for j in 0..2 {
                sum[i][j] += term[i][j];
            }
        }
    }
    for _ in 0..squarings {
        sum = mul(&sum, &sum);
    }
    sum
}

/// `e^{-itM}` for a matrix `M`.
pub fn expm_minus_i(m: &M2, t: f64) -> M2 {
    expm(&m.map(|row| row.map(|z| z * c(0.0, -t))))
}

pub fn distance(a: &Matrix2, b: &M2) -> f64 {
    let entries = [a.a, a.b, a.c, a.d];
    let other = [b[0][0], b[0][1], b[1][0], b[1][1]];
    entries.iter().zip(other).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn apply(m: &M2, v: [Complex64; 2]) -> [Complex64; 2] {
    [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
}
