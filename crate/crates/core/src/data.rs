//! Builtin datasets and input loading.

use crate::algebra::{build_group_algebra, parse_input, ParsedInput, PartitionedAlgebra};
use crate::error::Result;

pub const EX1: &str = include_str!("../data/ex1.grp");
pub const EX2: &str = include_str!("../data/ex2.grp");
pub const A4: &str = include_str!("../data/a4.grp");
pub const KX2: &str = include_str!("../data/kx2.alg");

pub const BUILTIN_NAMES: [&str; 4] = ["ex1", "ex2", "a4", "kx2"];

/// Parses a format A or format B text and builds the algebra.
pub fn load_text(text: &str) -> Result<PartitionedAlgebra> {
    match parse_input(text)? {
        ParsedInput::Algebra(raw) => raw.build(),
        ParsedInput::Group { group, field } => build_group_algebra(&group, &field),
    }
}

pub fn builtin_text(name: &str) -> Option<&'static str> {
    match name {
        "ex1" => Some(EX1),
        "ex2" => Some(EX2),
        "a4" => Some(A4),
        "kx2" => Some(KX2),
        _ => None,
    }
}

pub fn builtin(name: &str) -> Option<Result<PartitionedAlgebra>> {
    builtin_text(name).map(load_text)
}

/// `(C3 x C3) : C2` with the involution inverting both factors, over GF(3).
pub fn ex1() -> Result<PartitionedAlgebra> {
    load_text(EX1)
}

/// `(C3 x C3) : C2` with the involution inverting one factor, over GF(3).
pub fn ex2() -> Result<PartitionedAlgebra> {
    load_text(EX2)
}

/// The alternating group of degree 4 over GF(4).
pub fn a4() -> Result<PartitionedAlgebra> {
    load_text(A4)
}

/// `k[x]/(x^2)` over GF(3).
pub fn kx2() -> PartitionedAlgebra {
    load_text(KX2).expect("shipped file is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_load() {
        for name in BUILTIN_NAMES {
            builtin(name).unwrap().unwrap();
        }
        assert!(builtin("nope").is_none());
    }

    #[test]
    fn a4_needs_four_elements() {
        let text = A4.replace("FIELD p=2 e=2 poly=1,1,1", "FIELD p=2");
        let err = load_text(&text).unwrap_err();
        assert!(err.to_string().contains("extend field"), "{err}");
    }
}
