//! Knots, cables and Newton pairs, with the text descriptors used on the
//! command line.
//!
//! A knot descriptor lists cables outermost first: `(2,5);(2,3)` is the
//! `(2,5)` cable of the trefoil. A Newton descriptor lists characteristic pairs
//! innermost first, as they come out of a Puiseux expansion: `N:(2,3);(2,1)`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

/// One cabling step: the `(p, q)` cable, `p` strands winding `q` times.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CablePair {
    p: u64,
    q: u64,
}

impl CablePair {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if p < 2 {
            return Err(Error::invalid(format!("p = {p} must be at least 2")));
        }
        if q < 1 {
            return Err(Error::invalid(format!("q = {q} must be at least 1")));
        }
        if p.gcd(&q) != 1 {
            return Err(Error::invalid(format!("gcd({p},{q}) = {} is not 1", p.gcd(&q))));
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }
}

impl fmt::Display for CablePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// An iterated torus knot, cables stored outermost first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IteratedTorusKnot {
    cables: Vec<CablePair>,
}

impl IteratedTorusKnot {
    pub fn new(cables: Vec<CablePair>) -> Result<Self> {
        let innermost = cables
            .last()
            .ok_or_else(|| Error::invalid("a knot needs at least one cable"))?;
        if innermost.q < 2 {
            return Err(Error::invalid(format!(
                "innermost cable {innermost} is a torus knot T(p,1), which is the unknot"
            )));
        }
        Ok(Self { cables })
    }

    pub fn torus(p: u64, q: u64) -> Result<Self> {
        Self::new(vec![CablePair::new(p, q)?])
    }

    pub fn cables(&self) -> &[CablePair] {
        &self.cables
    }

    /// `r_k = q_1 ... q_{k-1}`, outermost first; `r_1 = 1`.
    pub fn r_factors(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.cables.len());
        let mut r = 1u64;
        for c in &self.cables {
            out.push(r);
            r = r.checked_mul(c.q).expect("cable r factor overflows u64");
        }
        out
    }

    /// The summands `s_{p_k,q_k;r_k}` of the signature function. Cables with
    /// `q = 1` contribute nothing and are skipped.
    pub fn triples(&self) -> Vec<CableTriple> {
        self.cables
            .iter()
            .zip(self.r_factors())
            .filter(|(c, _)| c.q >= 2)
            .map(|(c, r)| CableTriple { p: c.p, q: c.q, r })
            .collect()
    }
}

/// Free-function form of [`IteratedTorusKnot::r_factors`].
pub fn cable_r_factors(knot: &IteratedTorusKnot) -> Vec<u64> {
    knot.r_factors()
}

impl fmt::Display for IteratedTorusKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.cables.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for IteratedTorusKnot {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_knot_descriptor(s)
    }
}

pub fn parse_knot_descriptor(text: &str) -> Result<IteratedTorusKnot> {
    let pairs = Parser::new(text).pair_list()?;
    let cables = pairs
        .into_iter()
        .map(|(p, q)| CablePair::new(to_positive(p, "p")?, to_positive(q, "q")?))
        .collect::<Result<Vec<_>>>()?;
    IteratedTorusKnot::new(cables)
}

fn to_positive(v: i64, name: &str) -> Result<u64> {
    u64::try_from(v).map_err(|_| Error::invalid(format!("{name} = {v} must be positive")))
}

/// Characteristic (Newton) pairs of a unibranched plane curve singularity,
/// innermost first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NewtonPairSequence {
    pairs: Vec<CablePair>,
}

/// `a_1 = q_1`, `a_{k+1} = p_{k+1} p_k a_k + q_{k+1}`, in the order of the pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedCableNumbers {
    pub a: Vec<u64>,
}

impl NewtonPairSequence {
    pub fn new(pairs: Vec<CablePair>) -> Result<Self> {
        let first = pairs
            .first()
            .ok_or_else(|| Error::invalid("at least one Newton pair is required"))?;
        if first.q <= first.p {
            return Err(Error::invalid(format!(
                "first Newton pair {first} must have q > p (swap the coordinates)"
            )));
        }
        Ok(Self { pairs })
    }

    pub fn from_pairs(pairs: &[(u64, u64)]) -> Result<Self> {
        let pairs = pairs
            .iter()
            .map(|&(p, q)| CablePair::new(p, q))
            .collect::<Result<Vec<_>>>()?;
        Self::new(pairs)
    }

    pub fn pairs(&self) -> &[CablePair] {
        &self.pairs
    }

    pub fn derived(&self) -> DerivedCableNumbers {
        let mut a: Vec<u64> = Vec::with_capacity(self.pairs.len());
        for (k, pair) in self.pairs.iter().enumerate() {
            let next = match k {
                0 => pair.q,
                _ => pair
                    .p
                    .checked_mul(self.pairs[k - 1].p)
                    .and_then(|v| v.checked_mul(a[k - 1]))
                    .and_then(|v| v.checked_add(pair.q))
                    .expect("a_k overflows u64"),
            };
            a.push(next);
        }
        DerivedCableNumbers { a }
    }
}

/// The link of the singularity as an iterated torus knot: the `(p_n, a_n)`
/// cable on ... on the `(p_1, a_1)` torus knot, stored outermost first.
pub fn newton_to_cables(np: &NewtonPairSequence) -> (IteratedTorusKnot, DerivedCableNumbers) {
    let derived = np.derived();
    let cables = np
        .pairs
        .iter()
        .zip(&derived.a)
        .rev()
        .map(|(pair, &a)| CablePair::new(pair.p, a).expect("gcd(p_k, a_k) = gcd(p_k, q_k) = 1"))
        .collect();
    let knot = IteratedTorusKnot::new(cables).expect("a_1 = q_1 > p_1 >= 2");
    (knot, derived)
}

impl fmt::Display for NewtonPairSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("N:")?;
        for (i, c) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for NewtonPairSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_newton_descriptor(s)
    }
}

pub fn parse_newton_descriptor(text: &str) -> Result<NewtonPairSequence> {
    let mut parser = Parser::new(text);
    parser.skip_ws();
    parser.expect_str("N:")?;
    let pairs = parser.pair_list()?;
    let pairs = pairs
        .into_iter()
        .map(|(p, q)| CablePair::new(to_positive(p, "p")?, to_positive(q, "q")?))
        .collect::<Result<Vec<_>>>()?;
    NewtonPairSequence::new(pairs)
}

/// A summand `s_{p,q;r}` of a signature function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CableTriple {
    pub p: u64,
    pub q: u64,
    pub r: u64,
}

impl CableTriple {
    pub fn new(p: u64, q: u64, r: u64) -> Result<Self> {
        if p < 2 || q < 2 {
            return Err(Error::invalid(format!("triple ({p},{q},{r}) needs p, q >= 2")));
        }
        if r < 1 {
            return Err(Error::invalid(format!("triple ({p},{q},{r}) needs r >= 1")));
        }
        if p.gcd(&q) != 1 {
            return Err(Error::invalid(format!("triple ({p},{q},{r}) needs gcd(p,q) = 1")));
        }
        Ok(Self { p, q, r })
    }
}

impl fmt::Display for CableTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.p, self.q, self.r)
    }
}

/// Parses a `;`-separated multiset of `p,q,r` triples, e.g. `2,3,1;2,3,5`.
pub fn parse_triple_set(text: &str) -> Result<Vec<CableTriple>> {
    let mut parser = Parser::new(text);
    let mut out = Vec::new();
    loop {
        let p = parser.int()?;
        parser.expect(',')?;
        let q = parser.int()?;
        parser.expect(',')?;
        let r = parser.int()?;
        out.push(CableTriple::new(
            to_positive(p, "p")?,
            to_positive(q, "q")?,
            to_positive(r, "r")?,
        )?);
        parser.skip_ws();
        if parser.at_end() {
            return Ok(out);
        }
        parser.expect(';')?;
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Self { text, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn at_end(&self) -> bool {
        self.pos == self.text.len()
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax { position: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn expect_str(&mut self, s: &str) -> Result<()> {
        if self.rest().starts_with(s) {
            self.pos += s.len();
            Ok(())
        } else {
            Err(self.error(format!("expected {s:?}")))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let rest = self.rest();
        let sign_len = usize::from(rest.starts_with(['-', '+']));
        let digits = rest[sign_len..].bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error("expected an integer"));
        }
        let token = &rest[..sign_len + digits];
        let value = token.parse().map_err(|_| self.error(format!("integer {token} out of range")))?;
        self.pos += token.len();
        Ok(value)
    }

    fn pair(&mut self) -> Result<(i64, i64)> {
        self.expect('(')?;
        let p = self.int()?;
        self.expect(',')?;
        let q = self.int()?;
        self.expect(')')?;
        Ok((p, q))
    }

    fn pair_list(&mut self) -> Result<Vec<(i64, i64)>> {
        let mut out = vec![self.pair()?];
        loop {
            self.skip_ws();
            if self.at_end() {
                return Ok(out);
            }
            self.expect(';')?;
            out.push(self.pair()?);
        }
    }
}
