//! Meromorphic functions of the form `outer(base(z))`.

use std::fmt;

use num_complex::Complex64;
use num_traits::Zero;
use ratdec_core::parser::{format_ratfun, parse_with_variables};
use ratdec_core::roots::isolate_roots_auto;
use ratdec_core::{ExprSource, GaussianRational, ParseError, Poly, RatFun, DEFAULT_PRECISION, PRECISION_CAP};
use serde::Serialize;

use crate::error::{LabError, Result};

/// Version tag of the expression grammar accepted by [`MeroExpr::parse`].
pub const MERO_GRAMMAR: &str = "ratdec-mero v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Base {
    Identity,
    Exp,
    Sin,
    Cos,
    Tan,
}

impl Base {
    pub fn token(self) -> &'static str {
        match self {
            Base::Identity => "x",
            Base::Exp => "exp",
            Base::Sin => "sin",
            Base::Cos => "cos",
            Base::Tan => "tan",
        }
    }

    fn from_token(t: &str) -> Option<Base> {
        Some(match t {
            "x" => Base::Identity,
            "exp" => Base::Exp,
            "sin" => Base::Sin,
            "cos" => Base::Cos,
            "tan" => Base::Tan,
            _ => return None,
        })
    }

    pub fn eval(self, z: Complex64) -> Complex64 {
        match self {
            Base::Identity => z,
            Base::Exp => z.exp(),
            Base::Sin => z.sin(),
            Base::Cos => z.cos(),
            Base::Tan => z.sin() / z.cos(),
        }
    }
}

/// A zero or pole of a polynomial in `w`, with its multiplicity.
#[derive(Clone, Debug)]
pub(crate) struct WRoot {
    pub value: Complex64,
    /// Exact value when the root is one of the base function's branch values.
    pub exact: Option<GaussianRational>,
    pub mult: u32,
}

/// `h(z) = outer(base(z))` with an exact reduced outer map.
#[derive(Clone, Debug)]
pub struct MeroExpr {
    base: Base,
    outer: RatFun,
    numer: Vec<Complex64>,
    denom: Vec<Complex64>,
}

impl MeroExpr {
    pub fn new(base: Base, outer: RatFun) -> MeroExpr {
        let to_f64 = |p: &Poly| p.coeffs().iter().map(|c| c.to_complex64()).collect();
        MeroExpr {
            base,
            numer: to_f64(outer.numer()),
            denom: to_f64(outer.denom()),
            outer,
        }
    }

    /// The base function itself.
    pub fn base_only(base: Base) -> MeroExpr {
        MeroExpr::new(base, RatFun::x())
    }

    /// Builds the outer map from double-precision coefficient lists
    /// (constant term first). Each coefficient is converted exactly.
    pub fn from_coeffs(base: Base, numer: &[Complex64], denom: &[Complex64]) -> Result<MeroExpr> {
        let conv = |cs: &[Complex64]| -> Result<Poly> {
            let v = cs
                .iter()
                .map(|&c| GaussianRational::from_complex64(c).ok_or(LabError::NonFinite("coefficient")))
                .collect::<Result<Vec<_>>>()?;
            Ok(Poly::new(v))
        };
        let outer = RatFun::reduce(conv(numer)?, conv(denom)?)?;
        Ok(MeroExpr::new(base, outer))
    }

    /// Parses a rational expression in one of the tokens `x`, `exp`, `sin`,
    /// `cos`, `tan`, e.g. `((sin)^2 - 1)/(sin)^2`.
    pub fn parse(text: &str) -> std::result::Result<MeroExpr, ParseError> {
        let (outer, var) = parse_with_variables(&ExprSource::inline(text), &["x", "exp", "sin", "cos", "tan"])?;
        let base = var.as_deref().and_then(Base::from_token).unwrap_or(Base::Identity);
        Ok(MeroExpr::new(base, outer))
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn outer(&self) -> &RatFun {
        &self.outer
    }

    pub fn is_constant(&self) -> bool {
        self.outer.is_constant()
    }

    /// `r(outer(base(z)))`.
    pub fn compose_outer(&self, r: &RatFun) -> MeroExpr {
        MeroExpr::new(self.base, r.compose(&self.outer))
    }

    /// `1 / (h - b)`.
    pub fn reciprocal_shifted(&self, b: Complex64) -> Result<MeroExpr> {
        let b = GaussianRational::from_complex64(b).ok_or(LabError::NonFinite("target"))?;
        let shifted = self.outer.shift(&-b);
        let outer = shifted.reciprocal().map_err(|_| LabError::Degenerate("h - b vanishes identically".into()))?;
        Ok(MeroExpr::new(self.base, outer))
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let w = self.base.eval(z);
        horner(&self.numer, w) / horner(&self.denom, w)
    }

    /// Value of the outer denominator at `base(z)`, used to screen samples
    /// near poles.
    pub fn denom_at(&self, z: Complex64) -> Complex64 {
        horner(&self.denom, self.base.eval(z))
    }

    pub(crate) fn degrees(&self) -> (usize, usize) {
        (self.outer.numer().degree_or_zero(), self.outer.denom().degree_or_zero())
    }
}

impl fmt::Display for MeroExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = format_ratfun(&self.outer);
        if self.base == Base::Identity {
            return f.write_str(&text);
        }
        // The formatter writes the variable as a bare `x`.
        let name = self.base.token();
        let mut out = String::with_capacity(text.len());
        for ch in text.chars() {
            if ch == 'x' {
                out.push_str(name);
            } else {
                out.push(ch);
            }
        }
        f.write_str(&out)
    }
}

pub(crate) fn horner(cs: &[Complex64], w: Complex64) -> Complex64 {
    cs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * w + c)
}

/// Roots of a nonzero polynomial with multiplicities. Roots equal to one of
/// `special` are detected exactly and reported with `exact` set.
pub(crate) fn roots_with_multiplicity(p: &Poly, special: &[GaussianRational]) -> Result<Vec<WRoot>> {
    let mut out = Vec::new();
    if p.is_constant() {
        return Ok(out);
    }
    for (factor, mult) in p.squarefree_decomposition()? {
        if factor.is_constant() {
            continue;
        }
        let mut rest = factor;
        for s in special {
            if rest.eval(s).is_zero() {
                rest = rest.div_exact(&Poly::linear_root(s))?;
                out.push(WRoot {
                    value: s.to_complex64(),
                    exact: Some(s.clone()),
                    mult,
                });
            }
        }
        if rest.is_constant() {
            continue;
        }
        for ball in isolate_roots_auto(&rest, DEFAULT_PRECISION, PRECISION_CAP)? {
            out.push(WRoot {
                value: ball.to_complex64(),
                exact: None,
                mult,
            });
        }
    }
    Ok(out)
}
