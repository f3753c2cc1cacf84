use std::fmt;

use permrep_branching::words;
use serde::Serialize;

use crate::EndoError;

/// S_α U^h S_β*.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Term {
    #[serde(serialize_with = "ser_word")]
    pub alpha: Vec<u8>,
    pub upower: i64,
    #[serde(serialize_with = "ser_word")]
    pub beta: Vec<u8>,
}

fn ser_word<S: serde::Serializer>(w: &[u8], s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&words::show(w))
}

/// U^h S_i = S_j U^m.
fn push_u(h: i64, i: u8) -> (u8, i64) {
    let h = if i == 1 { h + 1 } else { h };
    if h.rem_euclid(2) == 0 {
        (2, h.div_euclid(2))
    } else {
        (1, h.div_euclid(2))
    }
}

impl Term {
    pub fn new(alpha: Vec<u8>, upower: i64, beta: Vec<u8>) -> Self {
        Term { alpha, upower, beta }
    }

    pub fn one() -> Self {
        Term::new(vec![], 0, vec![])
    }

    pub fn s(i: u8) -> Self {
        Term::new(vec![i], 0, vec![])
    }

    pub fn s_star(i: u8) -> Self {
        Term::new(vec![], 0, vec![i])
    }

    pub fn u(h: i64) -> Self {
        Term::new(vec![], h, vec![])
    }

    /// Right multiplication by S_i; `None` when the product vanishes.
    fn times_s(mut self, i: u8) -> Option<Self> {
        if self.beta.is_empty() {
            let (j, m) = push_u(self.upower, i);
            self.alpha.push(j);
            self.upower = m;
            Some(self)
        } else if self.beta[0] == i {
            self.beta.remove(0);
            Some(self)
        } else {
            None
        }
    }

    fn times_s_star(mut self, i: u8) -> Self {
        self.beta.insert(0, i);
        self
    }

    /// S_β* U^g = U^{g'} S_{β'}*, pushed letter by letter.
    fn times_u(mut self, g: i64) -> Self {
        let mut g = g;
        for b in self.beta.iter_mut() {
            let (j, m) = push_u(-g, *b);
            *b = j;
            g = -m;
        }
        self.upower += g;
        self
    }

    pub fn times(&self, other: &Term) -> Option<Term> {
        let mut t = self.clone();
        for &i in &other.alpha {
            t = t.times_s(i)?;
        }
        t = t.times_u(other.upower);
        for &i in other.beta.iter().rev() {
            t = t.times_s_star(i);
        }
        Some(t)
    }

    pub fn adjoint(&self) -> Term {
        Term::new(self.beta.clone(), -self.upower, self.alpha.clone())
    }

    fn flipped(&self) -> Term {
        Term::new(words::flip(&self.alpha), -self.upower, words::flip(&self.beta))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.alpha.is_empty() {
            parts.push(format!("S{}", words::show(&self.alpha)));
        }
        if self.upower != 0 {
            parts.push(if self.upower == 1 { "U".into() } else { format!("U^{}", self.upower) });
        }
        if !self.beta.is_empty() {
            parts.push(format!("S{}*", words::show(&self.beta)));
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        write!(f, "{}", parts.join(" "))
    }
}

/// Σ S_α U^h S_β*, terms in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialExpr {
    pub terms: Vec<Term>,
}

impl MonomialExpr {
    pub fn term(t: Term) -> Self {
        MonomialExpr { terms: vec![t] }
    }

    pub fn sum(mut self, other: MonomialExpr) -> Self {
        self.terms.extend(other.terms);
        self
    }

    /// Distributed product; vanishing products are dropped.
    pub fn times(&self, other: &MonomialExpr) -> Self {
        let terms = self.terms.iter().flat_map(|a| other.terms.iter().filter_map(move |b| a.times(b))).collect();
        MonomialExpr { terms }
    }

    pub fn adjoint(&self) -> Self {
        MonomialExpr { terms: self.terms.iter().map(Term::adjoint).collect() }
    }

    /// Image under the flip-flop: S₁ ↔ S₂ and U ↦ U*.
    pub fn flipped(&self) -> Self {
        MonomialExpr { terms: self.terms.iter().map(Term::flipped).collect() }
    }

    /// The self-adjoint unitary S₁S₂* + S₂S₁*.
    pub fn flip_unitary() -> Self {
        MonomialExpr { terms: vec![Term::new(vec![1], 0, vec![2]), Term::new(vec![2], 0, vec![1])] }
    }

    /// Parses `s1`, `s2*`, `s_{12,1}`, `u`, `u*`, `u^2`, `u^{-2}`, `f`,
    /// `1`, juxtaposition, `+` and parentheses.
    pub fn parse(s: &str) -> Result<Self, EndoError> {
        let mut p = Parser { src: s, pos: 0 };
        let e = p.sum()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }
}

impl fmt::Display for MonomialExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let s: Vec<String> = self.terms.iter().map(|t| t.to_string()).collect();
        write!(f, "{}", s.join(" + "))
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, why: &str) -> EndoError {
        EndoError::Parse { input: self.src.to_string(), why: format!("{why} at byte {}", self.pos) }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace() || c == '·') {
            self.bump();
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<MonomialExpr, EndoError> {
        let mut e = self.product()?;
        loop {
            self.skip_ws();
            if !self.eat('+') {
                return Ok(e);
            }
            e = e.sum(self.product()?);
        }
    }

    fn product(&mut self) -> Result<MonomialExpr, EndoError> {
        self.skip_ws();
        let mut e = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('s' | 'S' | 'u' | 'U' | 'f' | '(' | '1') => e = e.times(&self.factor()?),
                _ => return Ok(e),
            }
        }
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some('0'..='9')) {
            self.bump();
        }
        self.src[start..self.pos].to_string()
    }

    fn factor(&mut self) -> Result<MonomialExpr, EndoError> {
        let e = match self.bump() {
            Some('1') => MonomialExpr::term(Term::one()),
            Some('f') => MonomialExpr::flip_unitary(),
            Some('(') => {
                let e = self.sum()?;
                self.skip_ws();
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                e
            }
            Some('s' | 'S') => {
                if self.eat('_') {
                    if !self.eat('{') {
                        return Err(self.err("expected '{'"));
                    }
                    let a = self.digits();
                    if !self.eat(',') {
                        return Err(self.err("expected ','"));
                    }
                    let b = self.digits();
                    if !self.eat('}') {
                        return Err(self.err("expected '}'"));
                    }
                    let w = |x: &str| words::parse(x).map_err(|_| self.err("letters must be 1 or 2"));
                    MonomialExpr::term(Term::new(w(&a)?, 0, w(&b)?))
                } else {
                    match self.bump() {
                        Some('1') => MonomialExpr::term(Term::s(1)),
                        Some('2') => MonomialExpr::term(Term::s(2)),
                        _ => return Err(self.err("expected s1 or s2")),
                    }
                }
            }
            Some('u' | 'U') => {
                let mut h = 1i64;
                if self.eat('^') {
                    let braced = self.eat('{');
                    let neg = self.eat('-');
                    let d = self.digits();
                    h = d.parse().map_err(|_| self.err("expected an exponent"))?;
                    if neg {
                        h = -h;
                    }
                    if braced && !self.eat('}') {
                        return Err(self.err("expected '}'"));
                    }
                }
                MonomialExpr::term(Term::u(h))
            }
            _ => return Err(self.err("unexpected character")),
        };
        Ok(if self.eat('*') { e.adjoint() } else { e })
    }
}
