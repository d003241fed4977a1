//! Homogeneous polynomials in `x, y, z` and binary forms in `s, t`.

use crate::error::{Error, Result};
use crate::linalg::{C64, Mat3, Vec3, ONE, ZERO};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Exponent triple `(i, j, k)` of the monomial `xⁱ yʲ zᵏ`.
pub type Exponent = [u32; 3];

/// A homogeneous form that may be zero. Internal workhorse behind [`HomPoly`].
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Form {
    pub degree: u32,
    pub terms: BTreeMap<Exponent, C64>,
}

impl Form {
    pub fn zero(degree: u32) -> Self {
        Form { degree, terms: BTreeMap::new() }
    }

    pub fn constant(value: C64) -> Self {
        let mut terms = BTreeMap::new();
        if value != ZERO {
            terms.insert([0, 0, 0], value);
        }
        Form { degree: 0, terms }
    }

    pub fn linear(l: &Vec3) -> Self {
        let mut f = Form::zero(1);
        for (i, &li) in l.iter().enumerate() {
            let mut e = [0; 3];
            e[i] = 1;
            f.add_term(e, li);
        }
        f
    }

    pub fn add_term(&mut self, e: Exponent, value: C64) {
        debug_assert_eq!(e.iter().sum::<u32>(), self.degree);
        let entry = self.terms.entry(e).or_insert(ZERO);
        *entry += value;
        if *entry == ZERO {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|v| *v == ZERO)
    }

    pub fn add(&self, other: &Form) -> Form {
        let mut out = self.clone();
        for (e, v) in &other.terms {
            out.add_term(*e, *v);
        }
        out
    }

    pub fn scaled(&self, s: C64) -> Form {
        let mut out = Form::zero(self.degree);
        for (e, v) in &self.terms {
            out.add_term(*e, v * s);
        }
        out
    }

    pub fn mul(&self, other: &Form) -> Form {
        let mut out = Form::zero(self.degree + other.degree);
        for (e1, v1) in &self.terms {
            for (e2, v2) in &other.terms {
                out.add_term([e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]], v1 * v2);
            }
        }
        out
    }


    pub fn eval(&self, v: &Vec3) -> C64 {
        self.terms
            .iter()
            .map(|(e, c)| c * v[0].powu(e[0]) * v[1].powu(e[1]) * v[2].powu(e[2]))
            .sum()
    }

    pub fn partial(&self, var: usize) -> Form {
        let mut out = Form::zero(self.degree.saturating_sub(1));
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut d = *e;
                d[var] -= 1;
                out.add_term(d, c * e[var] as f64);
            }
        }
        out
    }

    /// `F(M·X)`: every variable `xᵢ` replaced by the linear form `Σⱼ Mᵢⱼ xⱼ`.
    pub fn substitute(&self, m: &Mat3) -> Form {
        let lin: Vec<Form> = m.iter().map(Form::linear).collect();
        let mut powers: Vec<Vec<Form>> = Vec::new();
        for l in &lin {
            let mut p = vec![Form::constant(ONE)];
            for k in 1..=self.degree {
                let next = p[(k - 1) as usize].mul(l);
                p.push(next);
            }
            powers.push(p);
        }
        let mut out = Form::zero(self.degree);
        for (e, c) in &self.terms {
            let t = powers[0][e[0] as usize]
                .mul(&powers[1][e[1] as usize])
                .mul(&powers[2][e[2] as usize]);
            out = out.add(&t.scaled(*c));
        }
        out
    }

    pub fn coeff_norm(&self) -> f64 {
        // an empty float sum is -0.0
        self.terms.values().map(|v| v.norm_sqr()).fold(0.0, |a, b| a + b).sqrt()
    }

    /// `Σ conj(aₑ) bₑ` over the monomial basis.
    pub fn inner(&self, other: &Form) -> C64 {
        self.terms
            .iter()
            .filter_map(|(e, a)| other.terms.get(e).map(|b| a.conj() * b))
            .sum()
    }
}

/// Nonzero homogeneous polynomial in three variables with complex coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct HomPoly(pub(crate) Form);

impl HomPoly {
    pub fn new(degree: u32, terms: impl IntoIterator<Item = (Exponent, C64)>) -> Result<Self> {
        let mut f = Form::zero(degree);
        for (e, v) in terms {
            if e.iter().sum::<u32>() != degree {
                return Err(Error::InvalidInput(format!(
                    "monomial {e:?} does not have degree {degree}"
                )));
            }
            if !v.is_finite() {
                return Err(Error::InvalidInput("non-finite coefficient".into()));
            }
            f.add_term(e, v);
        }
        HomPoly::from_form(f)
    }

    pub(crate) fn from_form(f: Form) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::InvalidInput("zero polynomial".into()));
        }
        Ok(HomPoly(f))
    }

    /// The linear form `l₀x + l₁y + l₂z`.
    pub fn linear(l: &Vec3) -> Result<Self> {
        HomPoly::from_form(Form::linear(l))
    }

    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exponent, C64)> + '_ {
        self.0.terms.iter().map(|(e, v)| (*e, *v))
    }

    pub fn coeff(&self, e: Exponent) -> C64 {
        self.0.terms.get(&e).copied().unwrap_or(ZERO)
    }

    pub fn eval(&self, v: &Vec3) -> C64 {
        self.0.eval(v)
    }

    /// `∂F/∂xᵢ`, or `None` when it vanishes identically.
    pub fn partial(&self, var: usize) -> Option<HomPoly> {
        HomPoly::from_form(self.0.partial(var)).ok()
    }

    pub fn gradient(&self, v: &Vec3) -> Vec3 {
        [0, 1, 2].map(|i| self.0.partial(i).eval(v))
    }

    pub fn hessian(&self, v: &Vec3) -> Mat3 {
        let mut h = [[ZERO; 3]; 3];
        for i in 0..3 {
            let fi = self.0.partial(i);
            for j in 0..3 {
                h[i][j] = fi.partial(j).eval(v);
            }
        }
        h
    }

    /// Determinant of the Hessian matrix as a form of degree `3(n-2)`.
    pub(crate) fn hessian_form(&self) -> Form {
        let second: Vec<Vec<Form>> = (0..3)
            .map(|i| {
                let fi = self.0.partial(i);
                (0..3).map(|j| fi.partial(j)).collect()
            })
            .collect();
        let minor = |a: usize, b: usize, c: usize, d: usize| {
            second[1][a].mul(&second[2][b]).add(&second[1][c].mul(&second[2][d]).scaled(-ONE))
        };
        second[0][0]
            .mul(&minor(1, 2, 2, 1))
            .add(&second[0][1].mul(&minor(0, 2, 2, 0)).scaled(-ONE))
            .add(&second[0][2].mul(&minor(0, 1, 1, 0)))
    }

    pub fn coeff_norm(&self) -> f64 {
        self.0.coeff_norm()
    }

    pub fn scaled(&self, s: C64) -> Result<HomPoly> {
        HomPoly::from_form(self.0.scaled(s))
    }

    /// Best `λ` with `other ≈ λ·self`, and the relative residual
    /// `|other - λ self| / |other|`.
    pub fn proportionality(&self, other: &HomPoly) -> (C64, f64) {
        if self.degree() != other.degree() {
            return (ZERO, 1.0);
        }
        let lambda = self.0.inner(&other.0) / self.0.inner(&self.0);
        let diff = other.0.add(&self.0.scaled(-lambda));
        (lambda, diff.coeff_norm() / other.coeff_norm())
    }

    pub fn is_proportional(&self, other: &HomPoly, tol: f64) -> bool {
        self.proportionality(other).1 < tol
    }

    /// Coefficients of the restriction to the line `s·u + t·v`, indexed by the
    /// power of `s` (see [`crate::roots::binary_roots`]).
    pub fn restrict(&self, u: &Vec3, v: &Vec3) -> Vec<C64> {
        // columns u, v, 0: the substituted form only involves x (for s) and y (for t)
        let m: Mat3 = [[u[0], v[0], ZERO], [u[1], v[1], ZERO], [u[2], v[2], ZERO]];
        let f = self.0.substitute(&m);
        let n = self.degree();
        (0..=n).map(|i| f.terms.get(&[i, n - i, 0]).copied().unwrap_or(ZERO)).collect()
    }
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, v) in self.0.terms.iter().rev() {
            let mono: Vec<String> = ["x", "y", "z"]
                .iter()
                .zip(e.iter())
                .filter(|(_, &k)| k > 0)
                .map(|(s, &k)| if k == 1 { s.to_string() } else { format!("{s}^{k}") })
                .collect();
            let mono = mono.join("*");
            let (neg, coeff) = format_coeff(*v);
            let sign = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let body = match (coeff.as_str(), mono.is_empty()) {
                ("1", false) => mono,
                (_, true) => coeff,
                (_, false) => format!("{coeff}*{mono}"),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

fn format_coeff(v: C64) -> (bool, String) {
    if v.im == 0.0 {
        (v.re < 0.0, format!("{}", v.re.abs()))
    } else if v.re == 0.0 {
        (v.im < 0.0, format!("{}i", v.im.abs()))
    } else {
        (false, format!("({}{:+}i)", v.re, v.im))
    }
}

/// Parses expressions such as `x*y^2 - z^3`, `2.5*x*z + (1-2i)*y^2` or `3i*x`.
impl FromStr for HomPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidInput(format!("cannot parse polynomial {s:?}: {msg}"));
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(bad("empty"));
        }
        let mut terms: Vec<(Exponent, C64)> = Vec::new();
        let chars: Vec<char> = cleaned.chars().collect();
        let mut start = 0;
        let mut depth = 0;
        let mut pieces = Vec::new();
        for (i, &ch) in chars.iter().enumerate() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '+' | '-' if depth == 0 && i > start && chars[i - 1] != '^' && !is_exponent_sign(&chars, i) => {
                    pieces.push(chars[start..i].iter().collect::<String>());
                    start = i;
                }
                _ => {}
            }
        }
        pieces.push(chars[start..].iter().collect::<String>());
        for piece in pieces {
            let (sign, body) = match piece.strip_prefix('-') {
                Some(rest) => (-1.0, rest.to_string()),
                None => (1.0, piece.strip_prefix('+').unwrap_or(&piece).to_string()),
            };
            let mut coeff = C64::new(sign, 0.0);
            let mut e = [0u32; 3];
            for factor in body.split('*') {
                if factor.is_empty() {
                    return Err(bad("empty factor"));
                }
                let (base, power) = match factor.split_once('^') {
                    Some((b, p)) => (b, p.parse::<u32>().map_err(|_| bad("bad exponent"))?),
                    None => (factor, 1),
                };
                match base {
                    "x" => e[0] += power,
                    "y" => e[1] += power,
                    "z" => e[2] += power,
                    _ => coeff *= parse_scalar(base).ok_or_else(|| bad("bad coefficient"))?.powu(power),
                }
            }
            terms.push((e, coeff));
        }
        let degree = terms[0].0.iter().sum();
        HomPoly::new(degree, terms)
    }
}

/// `true` for the sign in a float literal such as `1e-5`.
fn is_exponent_sign(chars: &[char], i: usize) -> bool {
    i >= 2 && matches!(chars[i - 1], 'e' | 'E') && (chars[i - 2].is_ascii_digit() || chars[i - 2] == '.')
}

fn parse_scalar(s: &str) -> Option<C64> {
    let s = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s);
    if s == "i" {
        return Some(C64::new(0.0, 1.0));
    }
    if let Some(im) = s.strip_suffix('i') {
        // "a+bi" / "a-bi" / "bi"
        if let Some(pos) = im.rfind(['+', '-']).filter(|&p| p > 0) {
            let re: f64 = im[..pos].parse().ok()?;
            let im_part = &im[pos..];
            let im: f64 = match im_part {
                "+" => 1.0,
                "-" => -1.0,
                _ => im_part.parse().ok()?,
            };
            return Some(C64::new(re, im));
        }
        return im.parse::<f64>().ok().map(|v| C64::new(0.0, v));
    }
    s.parse::<f64>().ok().map(|v| C64::new(v, 0.0))
}

/// Binary form `Σ cᵢ sⁱ t^{d-i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm {
    pub coeffs: Vec<C64>,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<C64>) -> Self {
        BinaryForm { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, s: C64, t: C64) -> C64 {
        let d = self.degree() as u32;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * s.powu(i as u32) * t.powu(d - i as u32))
            .sum()
    }

    pub fn d_s(&self) -> BinaryForm {
        if self.coeffs.len() <= 1 {
            return BinaryForm::new(vec![ZERO]);
        }
        BinaryForm::new((1..self.coeffs.len()).map(|i| self.coeffs[i] * i as f64).collect())
    }

    pub fn d_t(&self) -> BinaryForm {
        let d = self.degree();
        if d == 0 {
            return BinaryForm::new(vec![ZERO]);
        }
        BinaryForm::new((0..d).map(|i| self.coeffs[i] * (d - i) as f64).collect())
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let mut out = vec![ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        BinaryForm::new(out)
    }

    pub fn sub(&self, other: &BinaryForm) -> BinaryForm {
        assert_eq!(self.coeffs.len(), other.coeffs.len());
        BinaryForm::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect())
    }
}
