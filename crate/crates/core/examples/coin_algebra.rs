//! Closed-form SU(2) exponentials and the nonlinear coin.

use nlqw::coin::{pauli_exp, NonlinearCoin, PauliVector, Polynomial};
use num_complex::Complex64;

fn main() {
    let h = pauli_exp(&PauliVector::hadamard(), 1.0);
    println!("Hadamard coin from its Pauli vector:");
    println!("  [{:.6} {:.6}]", h.a, h.b);
    println!("  [{:.6} {:.6}]", h.c, h.d);
    println!("  unitarity defect {:.2e}", h.unitarity_defect());

    let s = PauliVector::new(0.2, -1.0, 0.5, 0.3);
    let composed = pauli_exp(&s, 0.3) * pauli_exp(&s, 0.4);
    println!("group law defect {:.2e}", (composed - pauli_exp(&s, 0.7)).norm_inf());

    let gross_neveu = NonlinearCoin::from_pauli(PauliVector::new(0.0, 0.0, 0.0, 1.0), Polynomial::linear(1.0));
    let u = [Complex64::new(0.9, 0.2), Complex64::new(-0.3, 0.4)];
    let v = gross_neveu.apply(&u, 0.5);
    println!("density before {:.15}", gross_neveu.density(&u));
    println!("density after  {:.15}", gross_neveu.density(&v));
    let w = [Complex64::new(0.1, -0.2), Complex64::new(0.3, 0.0)];
    println!("derivative check {:.2e}", gross_neveu.frechet_defect(&u, &w, 1e-5));
}
