//! Curve file grammar:
//!
//! ```text
//! field p=<int> a=<int>
//! curve kind=hyperelliptic f=<poly in x> h=<poly in x>
//! curve kind=plane F=<homogeneous poly in X,Y,Z>
//! ```
//!
//! Coefficients are integers (reduced mod p) or bracketed coordinate lists
//! `[c0,c1,...]` in the power basis of the field modulus. Blank lines and
//! lines starting with `#` are ignored.

use crate::ff::{standard_field, Fe, FiniteField, Poly};

use super::{CurveError, CurveModel, HyperellipticCurve, PlaneCurve};

/// One monomial: coefficient and exponents per variable.
type Term = (Fe, Vec<u32>);

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
    line: usize,
    col0: usize,
}

impl<'a> Lexer<'a> {
    fn err(&self, msg: impl Into<String>) -> CurveError {
        CurveError::Parse { line: self.line, col: self.col0 + self.pos + 1, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<u64, CurveError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse::<u64>()
            .map_err(|_| {
                self.pos = start;
                self.err("integer too large")
            })
    }
}

fn parse_coeff(lx: &mut Lexer, k: &FiniteField) -> Result<Fe, CurveError> {
    if lx.eat(b'[') {
        let mut cs = vec![lx.int()? % k.characteristic()];
        while lx.eat(b',') {
            cs.push(lx.int()? % k.characteristic());
        }
        if !lx.eat(b']') {
            return Err(lx.err("expected `]`"));
        }
        k.from_coords(&cs).map_err(|_| lx.err(format!("more than {} coordinates", k.degree())))
    } else {
        let v = lx.int()?;
        Ok(k.from_u64(v % k.characteristic()))
    }
}

/// Parses a sum of monomials over the given variable names.
fn parse_terms(lx: &mut Lexer, k: &FiniteField, vars: &[u8]) -> Result<Vec<Term>, CurveError> {
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let mut neg = false;
        if lx.eat(b'-') {
            neg = true;
        } else if !first && !lx.eat(b'+') {
            break;
        }
        first = false;
        let mut coeff = k.one();
        let mut exps = vec![0u32; vars.len()];
        let mut factors = 0;
        loop {
            match lx.peek() {
                Some(c) if c.is_ascii_digit() || c == b'[' => {
                    coeff = k.mul(&coeff, &parse_coeff(lx, k)?);
                }
                Some(c) if vars.contains(&c) => {
                    lx.pos += 1;
                    let i = vars.iter().position(|&v| v == c).unwrap();
                    let e = if lx.eat(b'^') { lx.int()? as u32 } else { 1 };
                    exps[i] += e;
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    return Err(lx.err(format!("unknown variable `{}`", c as char)));
                }
                _ => return Err(lx.err("expected a coefficient or variable")),
            }
            factors += 1;
            if !lx.eat(b'*') {
                break;
            }
        }
        debug_assert!(factors > 0);
        if neg {
            coeff = k.neg(&coeff);
        }
        terms.push((coeff, exps));
    }
    if lx.peek().is_some() {
        return Err(lx.err("unexpected character"));
    }
    Ok(terms)
}

fn univariate(terms: Vec<Term>, k: &FiniteField) -> Poly {
    let deg = terms.iter().map(|(_, e)| e[0] as usize).max().unwrap_or(0);
    let mut c = vec![k.zero(); deg + 1];
    for (a, e) in terms {
        let i = e[0] as usize;
        c[i] = k.add(&c[i], &a);
    }
    Poly::from_coeffs(c)
}

/// Parses a univariate polynomial in `x`, e.g. `1 + 2*x + [0,1]*x^3`.
pub fn parse_poly(text: &str, k: &FiniteField) -> Result<Poly, CurveError> {
    let mut lx = Lexer { s: text.as_bytes(), pos: 0, line: 1, col0: 0 };
    Ok(univariate(parse_terms(&mut lx, k, b"x")?, k))
}

/// Formats a polynomial in the curve-file syntax.
pub fn format_poly(f: &Poly, k: &FiniteField, var: &str) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let coeff = |c: &Fe| -> String {
        if k.degree() == 1 {
            c.coords()[0].to_string()
        } else {
            let cs: Vec<String> = c.coords().iter().map(|v| v.to_string()).collect();
            format!("[{}]", cs.join(","))
        }
    };
    let mut parts = Vec::new();
    for (i, c) in f.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        parts.push(match (i, k.is_one(c)) {
            (0, _) => coeff(c),
            (_, true) => mono,
            _ => format!("{}*{mono}", coeff(c)),
        });
    }
    parts.join(" + ")
}

/// Locates `key=` value spans on a line: returns (value, column offset).
fn fields<'a>(line: &'a str, keys: &[&str], lineno: usize) -> Result<Vec<(&'a str, usize)>, CurveError> {
    let mut starts = Vec::new();
    for key in keys {
        let pat = format!("{key}=");
        let pos = line
            .match_indices(&pat)
            .find(|(i, _)| *i == 0 || line.as_bytes()[i - 1].is_ascii_whitespace())
            .map(|(i, _)| i)
            .ok_or(CurveError::Parse { line: lineno, col: line.len() + 1, msg: format!("missing `{key}=`") })?;
        starts.push((pos, pos + pat.len()));
    }
    let mut order: Vec<usize> = (0..keys.len()).collect();
    order.sort_by_key(|&i| starts[i].0);
    let mut out = vec![("", 0); keys.len()];
    for (rank, &i) in order.iter().enumerate() {
        let end = order.get(rank + 1).map(|&j| starts[j].0).unwrap_or(line.len());
        out[i] = (&line[starts[i].1..end], starts[i].1);
    }
    Ok(out)
}

pub fn parse_curve_file(text: &str) -> Result<CurveModel, CurveError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let (ln, first) = lines.next().ok_or(CurveError::Parse { line: 1, col: 1, msg: "empty curve file".into() })?;
    if !first.trim_start().starts_with("field") {
        return Err(CurveError::Parse { line: ln, col: 1, msg: "expected `field p=<int> a=<int>`".into() });
    }
    let fv = fields(first, &["p", "a"], ln)?;
    let num = |(s, c): (&str, usize)| -> Result<u64, CurveError> {
        s.trim().parse::<u64>().map_err(|_| CurveError::Parse { line: ln, col: c + 1, msg: format!("bad integer `{}`", s.trim()) })
    };
    let p = num(fv[0])?;
    let a = num(fv[1])? as usize;
    let k = standard_field(p, a).map_err(|e| CurveError::Parse { line: ln, col: fv[0].1 + 1, msg: e.to_string() })?;
    let (ln, second) = lines.next().ok_or(CurveError::Parse { line: ln + 1, col: 1, msg: "missing `curve` line".into() })?;
    if let Some((extra, _)) = lines.next() {
        return Err(CurveError::Parse { line: extra, col: 1, msg: "unexpected content after curve line".into() });
    }
    if !second.trim_start().starts_with("curve") {
        return Err(CurveError::Parse { line: ln, col: 1, msg: "expected `curve kind=...`".into() });
    }
    let kind_start = second.find("kind=").ok_or(CurveError::Parse { line: ln, col: 1, msg: "missing `kind=`".into() })?;
    let kind: String = second[kind_start + 5..].chars().take_while(|c| !c.is_whitespace()).collect();
    let sub = |(s, c): (&str, usize), vars: &[u8]| -> Result<Vec<Term>, CurveError> {
        let mut lx = Lexer { s: s.as_bytes(), pos: 0, line: ln, col0: c };
        parse_terms(&mut lx, &k, vars)
    };
    match kind.as_str() {
        "hyperelliptic" => {
            let v = fields(second, &["f", "h"], ln)?;
            let f = univariate(sub(v[0], b"x")?, &k);
            let h = univariate(sub(v[1], b"x")?, &k);
            Ok(CurveModel::Hyperelliptic(HyperellipticCurve::new(k, f, h)?))
        }
        "plane" => {
            let v = fields(second, &["F"], ln)?;
            let terms = sub(v[0], b"XYZ")?;
            let terms = terms.into_iter().map(|(c, e)| (c, [e[0], e[1], e[2]])).collect();
            Ok(CurveModel::Plane(PlaneCurve::new(k, terms)?))
        }
        other => Err(CurveError::Parse {
            line: ln,
            col: kind_start + 6,
            msg: format!("unknown curve kind `{other}`"),
        }),
    }
}
