//! Series descriptions for `--A` / `--B`.
//!
//! Accepted forms:
//! - named series: `exp`, `0f1`, `dunkl-e`, `geometric`, `bq`, `log-like`,
//!   `trivial-rational`, `zeta`, optionally with inline arguments such as
//!   `0f1(1, 3/2)`, `bq(2)`, `dunkl-e(1/3)`, `zeta(4)`;
//! - coefficient lists `[1, -2, 1/3]`;
//! - polynomials in `z` with rational coefficients, products and integer
//!   powers, e.g. `(z-1)^2`, `1 - z^2`, `(1+z)^3 (2z+1)`.

use brenke_core::numerics::{int, parse_rational, ExactRational};
use brenke_core::powerseries::SeriesSpec;
use num_traits::{Signed, Zero};

use crate::error::{AppError, Result};

/// Parameters for named series that were given as separate flags.
#[derive(Clone, Debug, Default)]
pub struct NamedParams {
    pub phi: Option<Vec<ExactRational>>,
    pub q: Option<ExactRational>,
    pub mu: Option<ExactRational>,
    pub s: Option<u32>,
}

fn usage(msg: impl Into<String>) -> AppError {
    AppError::Usage(msg.into())
}

pub fn parse_rational_arg(s: &str) -> Result<ExactRational> {
    parse_rational(s.trim()).map_err(|_| usage(format!("not a rational number: {s:?}")))
}

pub fn parse_rational_list(s: &str) -> Result<Vec<ExactRational>> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(parse_rational_arg).collect()
}

pub fn parse_series(text: &str, named: &NamedParams) -> Result<SeriesSpec> {
    let t = text.trim();
    if t.is_empty() {
        return Err(usage("empty series description"));
    }
    let (head, args) = match t.find('(') {
        Some(i) if t.ends_with(')') && t[..i].chars().all(|c| c.is_ascii_alphanumeric() || c == '-') && i > 0 => {
            (&t[..i], Some(&t[i + 1..t.len() - 1]))
        }
        _ => (t, None),
    };
    let one = |what: &str, flag: Option<ExactRational>| -> Result<ExactRational> {
        match args {
            Some(a) => parse_rational_arg(a),
            None => flag.ok_or_else(|| usage(format!("{head} needs {what}"))),
        }
    };
    let spec = match head.to_ascii_lowercase().as_str() {
        "exp" => SeriesSpec::Exp,
        "geometric" => SeriesSpec::Geometric,
        "log-like" => SeriesSpec::LogLike,
        "trivial-rational" => SeriesSpec::TrivialRational,
        "0f1" | "0fq" => {
            let phi = match args {
                Some(a) => parse_rational_list(a)?,
                None => named.phi.clone().ok_or_else(|| usage(format!("{head} needs --phi")))?,
            };
            SeriesSpec::Hypergeometric0Fq(phi)
        }
        "dunkl-e" => SeriesSpec::DunklE(one("--mu", named.mu.clone())?),
        "bq" => SeriesSpec::Bq(one("--q", named.q.clone())?),
        "zeta" => {
            let s = match args {
                Some(a) => a.trim().parse().map_err(|_| usage(format!("bad shift in {t:?}")))?,
                None => named.s.unwrap_or(0),
            };
            SeriesSpec::ZetaRelative { s }
        }
        _ if t.starts_with('[') && t.ends_with(']') => SeriesSpec::Explicit(parse_rational_list(&t[1..t.len() - 1])?),
        _ => SeriesSpec::Explicit(parse_polynomial(t)?),
    };
    spec.validate()?;
    if let SeriesSpec::Explicit(c) = &spec {
        if c.first().is_none_or(|c| c.is_zero()) {
            return Err(usage(format!("{t:?} has zero constant term")));
        }
    }
    Ok(spec)
}

/// Coefficients (lowest degree first) of a polynomial in `z`.
pub fn parse_polynomial(text: &str) -> Result<Vec<ExactRational>> {
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, pos: 0 };
    let out = p.sum()?;
    if p.pos != p.tokens.len() {
        return Err(usage(format!("unexpected input in {text:?}")));
    }
    Ok(trim(out))
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(ExactRational),
    Z,
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        match c {
            ' ' | '\t' => {}
            'z' | 'Z' => out.push(Tok::Z),
            '+' => out.push(Tok::Plus),
            '-' => out.push(Tok::Minus),
            '*' => out.push(Tok::Star),
            '^' => out.push(Tok::Caret),
            '(' => out.push(Tok::Open),
            ')' => out.push(Tok::Close),
            d if d.is_ascii_digit() => {
                let start = i;
                while i + 1 < cs.len() && (cs[i + 1].is_ascii_digit() || cs[i + 1] == '.' || cs[i + 1] == '/') {
                    i += 1;
                }
                let lit: String = cs[start..=i].iter().collect();
                out.push(Tok::Num(parse_rational_arg(&lit)?));
            }
            _ => return Err(usage(format!("unexpected character {c:?} in {s:?}"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Tok>,
    pos: usize,
}

type Poly = Vec<ExactRational>;

fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn add(a: &Poly, b: &Poly, sign: i64) -> Poly {
    let mut out = vec![ExactRational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c * int(sign);
    }
    out
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![ExactRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn sum(&mut self) -> Result<Poly> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                add(&vec![ExactRational::zero()], &self.product()?, -1)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.product()?
            }
            _ => self.product()?,
        };
        while let Some(t @ (Tok::Plus | Tok::Minus)) = self.peek() {
            let sign = if *t == Tok::Plus { 1 } else { -1 };
            self.pos += 1;
            acc = add(&acc, &self.product()?, sign);
        }
        Ok(acc)
    }

    // juxtaposition multiplies, so `2z` and `(1+z)(1-z)` work
    fn product(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = mul(&acc, &self.power()?);
                }
                Some(Tok::Num(_) | Tok::Z | Tok::Open) => acc = mul(&acc, &self.power()?),
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let e = match self.tokens.get(self.pos) {
            Some(Tok::Num(n)) if n.is_integer() && !n.is_negative() => n.to_integer(),
            _ => return Err(usage("exponents must be non-negative integers")),
        };
        self.pos += 1;
        let e: u32 = e.try_into().map_err(|_| usage("exponent too large"))?;
        if e > 64 {
            return Err(usage("exponent too large"));
        }
        let mut out = vec![int(1)];
        for _ in 0..e {
            out = mul(&out, &base);
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<Poly> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        match t {
            Some(Tok::Num(q)) => Ok(vec![q]),
            Some(Tok::Z) => Ok(vec![int(0), int(1)]),
            Some(Tok::Open) => {
                let inner = self.sum()?;
                if self.tokens.get(self.pos) != Some(&Tok::Close) {
                    return Err(usage("unbalanced parentheses"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(usage("malformed polynomial")),
        }
    }
}

/// Short label used in reports.
pub fn describe(spec: &SeriesSpec) -> String {
    match spec {
        SeriesSpec::Exp => "exp".into(),
        SeriesSpec::Geometric => "geometric".into(),
        SeriesSpec::LogLike => "log-like".into(),
        SeriesSpec::TrivialRational => "trivial-rational".into(),
        SeriesSpec::Hypergeometric0Fq(p) => format!("0f1({})", join(p)),
        SeriesSpec::DunklE(mu) => format!("dunkl-e({mu})"),
        SeriesSpec::Bq(q) => format!("bq({q})"),
        SeriesSpec::ZetaRelative { s } => format!("zeta({s})"),
        SeriesSpec::Explicit(c) => format!("[{}]", join(c)),
        SeriesSpec::Shifted { base, lowering, s } => format!("shift({}, {}, {s})", describe(base), describe(lowering)),
        SeriesSpec::Product(fs) => fs.iter().map(describe).collect::<Vec<_>>().join(" * "),
        SeriesSpec::Dilated(b, l) => format!("{}({l} z)", describe(b)),
    }
}

fn join(c: &[ExactRational]) -> String {
    c.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(", ")
}
