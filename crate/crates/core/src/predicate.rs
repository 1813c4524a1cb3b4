//! Boolean combinations of linear inequalities over the coordinates `x0, x1, ...`.
//!
//! Used for custom positive cones and for symbolic ideals. The text form is
//!
//! ```text
//! pred  := conj ('|' conj)*
//! conj  := unary ('&' unary)*
//! unary := '!' unary | '(' pred ')' | 'true' | 'false' | lin REL lin
//! lin   := ['-'] term (('+' | '-') term)*
//! term  := NUM ['/' NUM] ['*' VAR] | VAR
//! REL   := '>' | '>=' | '=' | '<' | '<='
//! ```
//!
//! Atoms are normalised to `Σ aᵢxᵢ + c ⊵ 0` with `⊵ ∈ {>, ≥, =}`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::vector::{fmt_rat, int, Rat, Vector};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rel {
    Gt,
    Ge,
    Eq,
}

impl Rel {
    fn holds(self, v: &Rat) -> bool {
        match self {
            Rel::Gt => v.is_positive(),
            Rel::Ge => !v.is_negative(),
            Rel::Eq => v.is_zero(),
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Rel::Gt => ">",
            Rel::Ge => ">=",
            Rel::Eq => "=",
        }
    }
}

/// `Σ coeffs[i]·x_i + constant ⊵ 0`, coefficients sparse and nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearAtom {
    coeffs: Vec<(usize, Rat)>,
    constant: Rat,
    rel: Rel,
}

impl LinearAtom {
    pub fn new(terms: impl IntoIterator<Item = (usize, Rat)>, constant: Rat, rel: Rel) -> Self {
        let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
        for (i, c) in terms {
            *acc.entry(i).or_insert_with(Rat::zero) += c;
        }
        let coeffs = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        LinearAtom { coeffs, constant, rel }
    }

    /// `x_i ⊵ 0`
    pub fn coord(i: usize, rel: Rel) -> Self {
        Self::new([(i, Rat::one())], Rat::zero(), rel)
    }

    pub fn rel(&self) -> Rel {
        self.rel
    }

    pub fn value(&self, x: &[Rat]) -> Rat {
        self.coeffs
            .iter()
            .fold(self.constant, |acc, (i, c)| acc + c * x[*i])
    }

    pub fn eval(&self, x: &[Rat]) -> bool {
        self.rel.holds(&self.value(x))
    }

    fn max_var(&self) -> Option<usize> {
        self.coeffs.last().map(|(i, _)| *i)
    }

    fn shifted(&self, offset: usize) -> Self {
        LinearAtom {
            coeffs: self.coeffs.iter().map(|(i, c)| (i + offset, *c)).collect(),
            constant: self.constant,
            rel: self.rel,
        }
    }

    /// Substitutes `x ↦ u − x`.
    fn reflected(&self, u: &Vector) -> Self {
        let constant = self
            .coeffs
            .iter()
            .fold(self.constant, |acc, (i, c)| acc + c * u[*i]);
        LinearAtom {
            coeffs: self.coeffs.iter().map(|(i, c)| (*i, -c)).collect(),
            constant,
            rel: self.rel,
        }
    }

    /// Substitutes `x_i ↦ x_{map[i]}`.
    fn remapped(&self, map: &[usize]) -> Self {
        LinearAtom::new(
            self.coeffs.iter().map(|(i, c)| (map[*i], *c)),
            self.constant,
            self.rel,
        )
    }
}

impl fmt::Display for LinearAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in &self.coeffs {
            let mag = c.abs();
            let body = if mag.is_one() {
                format!("x{}", i)
            } else {
                format!("{}*x{}", fmt_rat(&mag), i)
            };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                write!(f, "{}", body)?;
                first = false;
            } else {
                write!(f, " {} {}", if c.is_negative() { "-" } else { "+" }, body)?;
            }
        }
        if first {
            write!(f, "{}", fmt_rat(&self.constant))?;
        } else if !self.constant.is_zero() {
            let sign = if self.constant.is_negative() { "-" } else { "+" };
            write!(f, " {} {}", sign, fmt_rat(&self.constant.abs()))?;
        }
        write!(f, " {} 0", self.rel.symbol())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Pred {
    True,
    False,
    Atom(LinearAtom),
    And(Vec<Pred>),
    Or(Vec<Pred>),
    Not(Box<Pred>),
}

impl Pred {
    pub fn atom(a: LinearAtom) -> Pred {
        Pred::Atom(a)
    }

    pub fn and(parts: Vec<Pred>) -> Pred {
        let mut flat = Vec::new();
        for p in parts {
            match p {
                Pred::True => {}
                Pred::And(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        if flat.iter().any(|p| *p == Pred::False) {
            return Pred::False;
        }
        match flat.len() {
            0 => Pred::True,
            1 => flat.pop().unwrap(),
            _ => Pred::And(flat),
        }
    }

    pub fn or(parts: Vec<Pred>) -> Pred {
        let mut flat = Vec::new();
        for p in parts {
            match p {
                Pred::False => {}
                Pred::Or(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        if flat.iter().any(|p| *p == Pred::True) {
            return Pred::True;
        }
        match flat.len() {
            0 => Pred::False,
            1 => flat.pop().unwrap(),
            _ => Pred::Or(flat),
        }
    }

    pub fn not(p: Pred) -> Pred {
        match p {
            Pred::True => Pred::False,
            Pred::False => Pred::True,
            Pred::Not(inner) => *inner,
            other => Pred::Not(Box::new(other)),
        }
    }

    /// `x_i = 0` for every `i` in `coords`.
    pub fn zero_on(coords: impl IntoIterator<Item = usize>) -> Pred {
        Pred::and(
            coords
                .into_iter()
                .map(|i| Pred::Atom(LinearAtom::coord(i, Rel::Eq)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &[Rat]) -> bool {
        match self {
            Pred::True => true,
            Pred::False => false,
            Pred::Atom(a) => a.eval(x),
            Pred::And(ps) => ps.iter().all(|p| p.eval(x)),
            Pred::Or(ps) => ps.iter().any(|p| p.eval(x)),
            Pred::Not(p) => !p.eval(x),
        }
    }

    pub fn holds(&self, v: &Vector) -> bool {
        self.eval(v.coords())
    }

    pub fn max_var(&self) -> Option<usize> {
        match self {
            Pred::True | Pred::False => None,
            Pred::Atom(a) => a.max_var(),
            Pred::And(ps) | Pred::Or(ps) => ps.iter().filter_map(Pred::max_var).max(),
            Pred::Not(p) => p.max_var(),
        }
    }

    /// Renames `x_i` to `x_{i+offset}`.
    pub fn shifted(&self, offset: usize) -> Pred {
        self.map_atoms(&|a| a.shifted(offset))
    }

    /// The predicate `φ(u − x)`.
    pub fn reflected(&self, u: &Vector) -> Pred {
        self.map_atoms(&|a| a.reflected(u))
    }

    pub fn remapped(&self, map: &[usize]) -> Pred {
        self.map_atoms(&|a| a.remapped(map))
    }

    /// Variables mentioned anywhere in the predicate.
    pub fn vars(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out.sort_unstable();
        out.dedup();
        out
    }

    fn collect_vars(&self, out: &mut Vec<usize>) {
        match self {
            Pred::True | Pred::False => {}
            Pred::Atom(a) => out.extend(a.coeffs.iter().map(|(i, _)| *i)),
            Pred::And(ps) | Pred::Or(ps) => ps.iter().for_each(|p| p.collect_vars(out)),
            Pred::Not(p) => p.collect_vars(out),
        }
    }

    /// True when every atom has a zero constant term.
    pub fn is_homogeneous(&self) -> bool {
        match self {
            Pred::True | Pred::False => true,
            Pred::Atom(a) => a.constant.is_zero(),
            Pred::And(ps) | Pred::Or(ps) => ps.iter().all(Pred::is_homogeneous),
            Pred::Not(p) => p.is_homogeneous(),
        }
    }

    fn map_atoms(&self, f: &dyn Fn(&LinearAtom) -> LinearAtom) -> Pred {
        match self {
            Pred::True => Pred::True,
            Pred::False => Pred::False,
            Pred::Atom(a) => Pred::Atom(f(a)),
            Pred::And(ps) => Pred::And(ps.iter().map(|p| p.map_atoms(f)).collect()),
            Pred::Or(ps) => Pred::Or(ps.iter().map(|p| p.map_atoms(f)).collect()),
            Pred::Not(p) => Pred::Not(Box::new(p.map_atoms(f))),
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, in_and: bool) -> fmt::Result {
        match self {
            Pred::True => write!(f, "true"),
            Pred::False => write!(f, "false"),
            Pred::Atom(a) => write!(f, "{}", a),
            Pred::And(ps) => {
                for (k, p) in ps.iter().enumerate() {
                    if k > 0 {
                        write!(f, " & ")?;
                    }
                    p.fmt_prec(f, true)?;
                }
                Ok(())
            }
            Pred::Or(ps) => {
                if in_and {
                    write!(f, "(")?;
                }
                for (k, p) in ps.iter().enumerate() {
                    if k > 0 {
                        write!(f, " | ")?;
                    }
                    p.fmt_prec(f, false)?;
                }
                if in_and {
                    write!(f, ")")?;
                }
                Ok(())
            }
            Pred::Not(p) => {
                write!(f, "!(")?;
                p.fmt_prec(f, false)?;
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Pred {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, false)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i128),
    Var(usize),
    Slash,
    Star,
    Plus,
    Minus,
    Rel(&'static str),
    And,
    Or,
    Bang,
    LParen,
    RParen,
    True,
    False,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, String> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let n = s.parse().map_err(|_| format!("number too large at column {}", start + 1))?;
                out.push((start, Tok::Num(n)));
                continue;
            }
            'x' => {
                i += 1;
                let ds = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if ds == i {
                    return Err(format!("expected variable index after 'x' at column {}", start + 1));
                }
                let s: String = chars[ds..i].iter().collect();
                out.push((start, Tok::Var(s.parse().map_err(|_| "bad variable index".to_string())?)));
                continue;
            }
            't' | 'f' => {
                while i < chars.len() && chars[i].is_ascii_alphabetic() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                match s.as_str() {
                    "true" => out.push((start, Tok::True)),
                    "false" => out.push((start, Tok::False)),
                    _ => return Err(format!("unknown word '{}' at column {}", s, start + 1)),
                }
                continue;
            }
            '/' => out.push((start, Tok::Slash)),
            '*' => out.push((start, Tok::Star)),
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '&' => out.push((start, Tok::And)),
            '|' => out.push((start, Tok::Or)),
            '!' => out.push((start, Tok::Bang)),
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            '>' | '<' => {
                if chars.get(i + 1) == Some(&'=') {
                    out.push((start, Tok::Rel(if c == '>' { ">=" } else { "<=" })));
                    i += 1;
                } else {
                    out.push((start, Tok::Rel(if c == '>' { ">" } else { "<" })));
                }
            }
            '=' => out.push((start, Tok::Rel("="))),
            other => return Err(format!("unexpected character '{}' at column {}", other, start + 1)),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

type LinExpr = (Vec<(usize, Rat)>, Rat);

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(c, _)| c + 1).unwrap_or(0)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn err(&self, what: &str) -> String {
        match self.toks.get(self.pos) {
            Some((c, t)) => format!("{} at column {} (found {:?})", what, c + 1, t),
            None => format!("{} at end of input", what),
        }
    }

    fn pred(&mut self) -> Result<Pred, String> {
        let mut parts = vec![self.conj()?];
        while self.peek() == Some(&Tok::Or) {
            self.bump();
            parts.push(self.conj()?);
        }
        Ok(Pred::or(parts))
    }

    fn conj(&mut self) -> Result<Pred, String> {
        let mut parts = vec![self.unary()?];
        while self.peek() == Some(&Tok::And) {
            self.bump();
            parts.push(self.unary()?);
        }
        Ok(Pred::and(parts))
    }

    fn unary(&mut self) -> Result<Pred, String> {
        match self.peek() {
            Some(Tok::Bang) => {
                self.bump();
                Ok(Pred::not(self.unary()?))
            }
            Some(Tok::LParen) => {
                self.bump();
                let p = self.pred()?;
                if self.bump() != Some(Tok::RParen) {
                    self.pos -= 1;
                    return Err(self.err("expected ')'"));
                }
                Ok(p)
            }
            Some(Tok::True) => {
                self.bump();
                Ok(Pred::True)
            }
            Some(Tok::False) => {
                self.bump();
                Ok(Pred::False)
            }
            _ => self.comparison(),
        }
    }

    fn comparison(&mut self) -> Result<Pred, String> {
        let lhs = self.linexpr()?;
        let rel = match self.bump() {
            Some(Tok::Rel(r)) => r,
            _ => {
                self.pos -= 1;
                return Err(self.err("expected comparison operator"));
            }
        };
        let rhs = self.linexpr()?;
        let (pos, neg) = match rel {
            "<" | "<=" => (rhs, lhs),
            _ => (lhs, rhs),
        };
        let terms = pos
            .0
            .into_iter()
            .chain(neg.0.into_iter().map(|(i, c)| (i, -c)));
        let constant = pos.1 - neg.1;
        let rel = match rel {
            ">" | "<" => Rel::Gt,
            ">=" | "<=" => Rel::Ge,
            _ => Rel::Eq,
        };
        Ok(Pred::Atom(LinearAtom::new(terms, constant, rel)))
    }

    fn linexpr(&mut self) -> Result<LinExpr, String> {
        let mut terms = Vec::new();
        let mut constant = Rat::zero();
        let mut sign = int(1);
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            sign = int(-1);
        }
        loop {
            match self.term()? {
                (Some(v), c) => terms.push((v, sign * c)),
                (None, c) => constant += sign * c,
            }
            match self.peek() {
                Some(Tok::Plus) => sign = int(1),
                Some(Tok::Minus) => sign = int(-1),
                _ => break,
            }
            self.bump();
        }
        Ok((terms, constant))
    }

    fn term(&mut self) -> Result<(Option<usize>, Rat), String> {
        match self.bump() {
            Some(Tok::Var(v)) => Ok((Some(v), Rat::one())),
            Some(Tok::Num(n)) => {
                let mut c = int(n);
                if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    match self.bump() {
                        Some(Tok::Num(0)) => {
                            self.pos -= 1;
                            return Err(self.err("zero denominator"));
                        }
                        Some(Tok::Num(d)) => c /= int(d),
                        _ => {
                            self.pos -= 1;
                            return Err(self.err("expected denominator"));
                        }
                    }
                }
                if self.peek() == Some(&Tok::Star) {
                    self.bump();
                    match self.bump() {
                        Some(Tok::Var(v)) => return Ok((Some(v), c)),
                        _ => {
                            self.pos -= 1;
                            return Err(self.err("expected variable after '*'"));
                        }
                    }
                }
                Ok((None, c))
            }
            _ => {
                self.pos -= 1;
                Err(self.err("expected number or variable"))
            }
        }
    }
}

impl std::str::FromStr for Pred {
    type Err = Error;

    fn from_str(src: &str) -> Result<Pred, Error> {
        let toks = tokenize(src).map_err(Error::Predicate)?;
        let mut p = Parser { toks, pos: 0 };
        let out = p.pred().map_err(Error::Predicate)?;
        if p.pos < p.toks.len() {
            let col = p.col();
            return Err(Error::Predicate(format!("trailing input at column {}", col)));
        }
        Ok(out)
    }
}
