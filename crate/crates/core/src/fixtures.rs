//! Small named structures used by tests, the acceptance suite and the CLI.

use crate::constructions::{coproduct, free_module as free, product};
use crate::scalars::Semifield;
use crate::structures::{polygon_module, FiniteStructure, RawStructure};

pub fn finfty_module() -> FiniteStructure {
    FiniteStructure::base_line(&Semifield::finfty()).unwrap()
}

pub fn finfty_field() -> FiniteStructure {
    FiniteStructure::field(&Semifield::finfty()).unwrap()
}

pub fn cyclotomic_field(k: u32) -> FiniteStructure {
    FiniteStructure::field(&Semifield::cyclotomic(k).unwrap()).unwrap()
}

/// The one-element module {0}.
pub fn zero_module() -> FiniteStructure {
    let f = Semifield::finfty();
    FiniteStructure::tabulate(&f, vec!["0".into()], 0, None, |_, _| 0, |_| 0, |_, _| 0, None).unwrap()
}

pub fn polygon(n: usize) -> FiniteStructure {
    polygon_module(n).unwrap()
}

pub fn finfty_square_module() -> FiniteStructure {
    let f = finfty_module();
    product(&f, &f).unwrap()
}

/// F∞ × F∞ with componentwise multiplication.
pub fn finfty_square_algebra() -> FiniteStructure {
    let f = finfty_field();
    product(&f, &f).unwrap()
}

pub fn free_module(n: usize) -> FiniteStructure {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    free(&Semifield::finfty(), &refs).unwrap()
}

/// {0, ±1, ±x} with x² = 0 and distinct nonzero elements summing to 0.
pub fn nil2() -> FiniteStructure {
    let f = Semifield::finfty();
    let names = ["0", "1", "-1", "x", "-x"].map(String::from).to_vec();
    let neg = |a: usize| [0, 2, 1, 4, 3][a];
    let add = |a: usize, b: usize| if a == b { a } else { 0 };
    // sign and degree of each element
    let sd = |a: usize| [(0i8, 0u8), (1, 0), (-1, 0), (1, 1), (-1, 1)][a];
    let mul = move |a: usize, b: usize| {
        let ((s, d), (t, e)) = (sd(a), sd(b));
        if s == 0 || t == 0 || d + e > 1 {
            return 0;
        }
        match (s * t, d + e) {
            (1, 0) => 1,
            (-1, 0) => 2,
            (1, _) => 3,
            _ => 4,
        }
    };
    let scalar = |u: usize, a: usize| if u == 0 { a } else { neg(a) };
    FiniteStructure::tabulate(&f, names, 0, Some(1), add, neg, scalar, Some(&mul)).unwrap()
}

/// The signed powers ±x^i, |i| ≤ 2, with the sign-blind rule "the larger
/// exponent wins". This violates associativity.
pub fn lexmax_sign_blind() -> RawStructure {
    let mut names = vec!["0".to_string()];
    for i in [1i32, 2, 0, -1, -2] {
        let p = match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        names.push(p.clone());
        names.push(format!("-{p}"));
    }
    let exps = [0i32, 1, 1, 2, 2, 0, 0, -1, -1, -2, -2];
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let mut raw = RawStructure::new(Semifield::finfty(), &refs, "0");
    for i in (1..names.len()).step_by(2) {
        raw.neg_row(&names[i], &names[i + 1]);
    }
    for i in 1..names.len() {
        for j in i + 1..names.len() {
            if exps[i] != exps[j] {
                let w = if exps[i] > exps[j] { i } else { j };
                raw.add_row(&names[i], &names[j], &names[w]);
            }
        }
    }
    raw
}

/// Every F∞-module fixture.
pub fn modules() -> Vec<FiniteStructure> {
    let f = finfty_module();
    vec![
        zero_module(),
        f.clone(),
        finfty_square_module(),
        coproduct(&f, &f).unwrap(),
        polygon(2),
        polygon(3),
        free_module(3),
        coproduct(&finfty_square_module(), &f).unwrap(),
    ]
}

/// Every F∞-algebra fixture.
pub fn algebras() -> Vec<FiniteStructure> {
    vec![finfty_field(), finfty_square_algebra(), nil2()]
}

/// Fixture division algebras over their own bases.
pub fn fields() -> Vec<FiniteStructure> {
    (1..=6).map(cyclotomic_field).collect()
}
