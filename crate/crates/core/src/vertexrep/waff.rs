//! The twisted affine algebra `g^(sigma_0)` and its vacuum-type induced
//! module: the trivial `g_0` module at level `c`, induced from the
//! nonnegative modes.

use std::fmt;

use serde::Serialize;

use crate::cycfield::{rat, CycScalar, Rat};
use crate::liestruct::{SparseVec, StructLie};
use crate::linalg::Matrix;
use crate::verma::{GradedAlgebra, TopAction};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum WGen {
    /// `t_0^{n / m0} (x) b_k`, basis index and scaled mode.
    X(usize, i64),
    C,
}

impl fmt::Display for WGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WGen::X(k, n) => write!(f, "x{k}({n})"),
            WGen::C => f.write_str("C_aff"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct TwistedAffine {
    pub sc: Vec<Vec<SparseVec>>,
    pub form: Matrix,
    /// Scaled residue of each basis vector, in `[0, m0)`.
    pub residue: Vec<i64>,
    pub m0: i64,
    pub level: Rat,
}

impl TwistedAffine {
    pub fn new(l: &StructLie, residue: Vec<i64>, m0: i64, level: Rat) -> Self {
        TwistedAffine { sc: l.sc.clone(), form: l.form.clone(), residue, m0, level }
    }

    pub fn dim(&self) -> usize {
        self.residue.len()
    }

    pub fn admits(&self, k: usize, n: i64) -> bool {
        (n - self.residue[k]).rem_euclid(self.m0) == 0
    }

    /// Lowering letters down to scaled depth `limit`.
    pub fn letters(&self, limit: i64) -> Vec<WGen> {
        let mut out = Vec::new();
        for k in 0..self.dim() {
            for n in -limit..0 {
                if self.admits(k, n) {
                    out.push(WGen::X(k, n));
                }
            }
        }
        out
    }
}

impl GradedAlgebra for TwistedAffine {
    type Gen = WGen;

    fn bracket(&self, a: &WGen, b: &WGen) -> Vec<(WGen, CycScalar)> {
        let (WGen::X(k, n), WGen::X(l, m)) = (a, b) else { return vec![] };
        let mut out: Vec<(WGen, CycScalar)> = self.sc[*k][*l].iter().map(|(p, c)| (WGen::X(*p, n + m), c.clone())).collect();
        if n + m == 0 {
            let f = &self.form[*k][*l];
            if !f.is_zero() && *n != 0 {
                out.push((WGen::C, f.scale(&rat(*n, self.m0))));
            }
        }
        out
    }

    fn depth(&self, g: &WGen) -> i64 {
        match g {
            WGen::X(_, n) => -n,
            WGen::C => 0,
        }
    }

    fn top_action(&self, g: &WGen) -> TopAction {
        match g {
            WGen::X(_, n) if *n < 0 => TopAction::Lowering,
            WGen::X(_, n) if *n > 0 => TopAction::Annihilates,
            WGen::X(..) => TopAction::Scalar(CycScalar::zero()),
            WGen::C => TopAction::Scalar(CycScalar::from_rat(self.level.clone())),
        }
    }
}
