use std::fmt;
use std::str::FromStr;

use crate::ExactError;

pub const NVARS: usize = 10;

/// The closed set of indeterminates. Adding a symbol means adding a variant here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Var {
    K = 0,
    Lambda,
    Delta,
    W,
    X,
    T,
    R,
    Rp,
    S,
    Sp,
}

impl Var {
    pub const ALL: [Var; NVARS] = [
        Var::K,
        Var::Lambda,
        Var::Delta,
        Var::W,
        Var::X,
        Var::T,
        Var::R,
        Var::Rp,
        Var::S,
        Var::Sp,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Var {
        Var::ALL[i]
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::K => "k",
            Var::Lambda => "λ",
            Var::Delta => "Δ",
            Var::W => "w",
            Var::X => "x",
            Var::T => "t",
            Var::R => "r",
            Var::Rp => "r'",
            Var::S => "s",
            Var::Sp => "s'",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Var {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "k" => Var::K,
            "λ" | "lambda" | "l" => Var::Lambda,
            "Δ" | "Delta" | "delta" | "D" => Var::Delta,
            "w" => Var::W,
            "x" => Var::X,
            "t" => Var::T,
            "r" => Var::R,
            "r'" | "r′" | "rp" => Var::Rp,
            "s" => Var::S,
            "s'" | "s′" | "sp" => Var::Sp,
            _ => return Err(ExactError::Parse(format!("unknown indeterminate `{s}`"))),
        })
    }
}
