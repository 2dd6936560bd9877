//! Reference diagrams shipped with the library, in canonical text form.

use crate::diagram::{parse, PresentationDiagram};

/// Douady's rabbit as a quadratic NET map.
pub const RABBIT: &str = include_str!("../data/rabbit.netmap");

/// The cubic Lodge map: every corner of `S²₁` is a critical value.
pub const LODGE: &str = include_str!("../data/lodge.netmap");

pub fn rabbit() -> PresentationDiagram {
    parse(RABBIT).expect("reference file parses")
}

pub fn lodge() -> PresentationDiagram {
    parse(LODGE).expect("reference file parses")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{serialize, validate};

    #[test]
    fn reference_files_are_canonical_and_valid() {
        for (text, d) in [(RABBIT, rabbit()), (LODGE, lodge())] {
            assert_eq!(serialize(&d), text);
            assert!(validate(&d).is_valid(), "{}", validate(&d));
        }
    }
}
