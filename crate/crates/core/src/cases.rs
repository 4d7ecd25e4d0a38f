//! Bundled IEEE test systems.
//!
//! Each system ships in both formats: the native file carries the standard
//! zero-injection bus set as `zib` directives, the MATPOWER file carries bus
//! loads and generator locations from which the same set is detected.

use crate::netmodel::{parse_case, CaseFormat, Network};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuiltinCase {
    pub name: &'static str,
    pub native: &'static str,
    pub matpower: &'static str,
}

pub const IEEE14: BuiltinCase = BuiltinCase {
    name: "ieee14",
    native: include_str!("../data/ieee14.case"),
    matpower: include_str!("../data/ieee14.m"),
};

pub const IEEE57: BuiltinCase = BuiltinCase {
    name: "ieee57",
    native: include_str!("../data/ieee57.case"),
    matpower: include_str!("../data/ieee57.m"),
};

pub const IEEE118: BuiltinCase = BuiltinCase {
    name: "ieee118",
    native: include_str!("../data/ieee118.case"),
    matpower: include_str!("../data/ieee118.m"),
};

pub const ALL: [BuiltinCase; 3] = [IEEE14, IEEE57, IEEE118];

pub fn builtin(name: &str) -> Option<BuiltinCase> {
    ALL.into_iter().find(|c| c.name.eq_ignore_ascii_case(name))
}

impl BuiltinCase {
    /// Native case with its zero-injection buses flagged.
    pub fn network<T: Scalar>(&self) -> Network<T> {
        parse_case(self.native, CaseFormat::Native).expect("bundled case parses")
    }

    pub fn text(&self, format: CaseFormat) -> &'static str {
        match format {
            CaseFormat::Native => self.native,
            CaseFormat::Matpower { .. } => self.matpower,
        }
    }
}
