//! GGS and EGS group families: accompanying vectors, generator recursions,
//! words over {a, b, c} with exact sections and abelianization exponents,
//! and the conjugator carrying b to c.
//!
//! Generator recursions (p-ary tree, alpha = (alpha_1, ..., alpha_{p-1})):
//!
//! * `a` has activity 1 and trivial sections;
//! * `b` is in Stab(1) with sections `(a^alpha_1, ..., a^alpha_{p-1}, b)`;
//! * `c` is in Stab(1) with sections `(c, a^alpha_1, ..., a^alpha_{p-1})`.
//!
//! b carries itself in the last coordinate and c in the first; those are
//! the defining displays and both are kept verbatim.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfp::{check_modulus, Fp};
use crate::tree::Aut;

/// The defining data of a GGS/EGS family: p and (alpha_1, ..., alpha_{p-1})
/// over GF(p).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct AccompanyingVector {
    p: u32,
    alpha: Vec<u32>,
}

impl AccompanyingVector {
    pub fn new(p: u32, alpha: &[i64]) -> Result<AccompanyingVector> {
        check_modulus(p)?;
        if alpha.len() != (p - 1) as usize {
            return Err(Error::Parameter(format!(
                "accompanying vector must have length {} for p = {}, got {}",
                p - 1,
                p,
                alpha.len()
            )));
        }
        Ok(AccompanyingVector {
            p,
            alpha: alpha.iter().map(|&x| Fp::reduced(x, p).value()).collect(),
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Coefficients (alpha_1, ..., alpha_{p-1}) as residues.
    pub fn alpha(&self) -> &[u32] {
        &self.alpha
    }

    /// alpha_i for i in 1..=p-1.
    pub fn coeff(&self, i: usize) -> u32 {
        self.alpha[i - 1]
    }

    /// Periodic iff the coefficients sum to zero mod p.
    pub fn is_periodic(&self) -> bool {
        self.alpha.iter().sum::<u32>() % self.p == 0
    }

    /// Symmetric iff alpha_i = alpha_{p-i} for all i.
    pub fn is_symmetric(&self) -> bool {
        let n = self.alpha.len();
        (0..n).all(|i| self.alpha[i] == self.alpha[n - 1 - i])
    }

    pub fn has_nonzero_entry(&self) -> bool {
        self.alpha.iter().any(|&x| x != 0)
    }
}

impl fmt::Display for AccompanyingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.alpha.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    /// Generated by {a, b}.
    Ggs,
    /// Generated by {a, b, c}.
    Egs,
    /// The subgroup generated by {a, c}.
    FSubgroup,
}

impl FamilyKind {
    pub fn allows(&self, g: Gen) -> bool {
        match (self, g) {
            (_, Gen::A) => true,
            (FamilyKind::Ggs, Gen::B) | (FamilyKind::Egs, Gen::B) => true,
            (FamilyKind::Egs, Gen::C) | (FamilyKind::FSubgroup, Gen::C) => true,
            _ => false,
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyKind::Ggs => write!(f, "GGS"),
            FamilyKind::Egs => write!(f, "EGS"),
            FamilyKind::FSubgroup => write!(f, "F-subgroup"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Family {
    kind: FamilyKind,
    vector: AccompanyingVector,
}

impl Family {
    pub fn new(kind: FamilyKind, vector: AccompanyingVector) -> Family {
        Family { kind, vector }
    }

    pub fn checked(kind: FamilyKind, vector: AccompanyingVector) -> Result<Family> {
        if !vector.has_nonzero_entry() {
            return Err(Error::Parameter(
                "accompanying vector must have a nonzero entry".into(),
            ));
        }
        Ok(Family { kind, vector })
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn vector(&self) -> &AccompanyingVector {
        &self.vector
    }

    pub fn p(&self) -> u32 {
        self.vector.p
    }

    pub fn generator(&self, g: Gen) -> Result<Aut> {
        if !self.kind.allows(g) {
            return Err(Error::Parameter(format!(
                "generator {} is not defined for a {} family",
                g, self.kind
            )));
        }
        Ok(match g {
            Gen::A => Aut::root_power(self.p(), 1),
            Gen::B => self.generator_b(),
            Gen::C => self.raw_c(),
        })
    }

    pub fn generator_a(&self) -> Aut {
        Aut::root_power(self.p(), 1)
    }

    /// b, defined by sections (a^alpha_1, ..., a^alpha_{p-1}, b).
    pub fn generator_b(&self) -> Aut {
        make_b(self.p(), std::sync::Arc::new(self.vector.alpha.clone()))
    }

    fn raw_c(&self) -> Aut {
        make_c(self.p(), std::sync::Arc::new(self.vector.alpha.clone()))
    }

    /// c, defined by sections (c, a^alpha_1, ..., a^alpha_{p-1}); only for
    /// EGS and F-subgroup families.
    pub fn generator_c(&self) -> Result<Aut> {
        self.generator(Gen::C)
    }

    /// The conjugator C = a*f with all sections of f equal to C; satisfies
    /// a^C = a and b^C = c. Its own sections are all equal to C itself.
    pub fn conjugator(&self) -> Result<Aut> {
        if self.kind != FamilyKind::Egs {
            return Err(Error::Parameter(
                "the conjugator is defined for EGS families".into(),
            ));
        }
        Ok(Aut::all_self(self.p(), 1))
    }

    /// The associated GGS group of an EGS family (same vector).
    pub fn associated_ggs(&self) -> Family {
        Family::new(FamilyKind::Ggs, self.vector.clone())
    }

    pub fn associated_f(&self) -> Family {
        Family::new(FamilyKind::FSubgroup, self.vector.clone())
    }

    pub fn generators(&self) -> Vec<(Gen, Aut)> {
        let mut out = vec![(Gen::A, self.generator_a())];
        if self.kind.allows(Gen::B) {
            out.push((Gen::B, self.generator_b()));
        }
        if self.kind.allows(Gen::C) {
            out.push((Gen::C, self.raw_c()));
        }
        out
    }
}

fn make_b(p: u32, alpha: std::sync::Arc<Vec<u32>>) -> Aut {
    Aut::from_fn(p, 0, move |i| {
        if i as u32 == p - 1 {
            make_b(p, alpha.clone())
        } else {
            Aut::root_power(p, alpha[i as usize] as i64)
        }
    })
}

fn make_c(p: u32, alpha: std::sync::Arc<Vec<u32>>) -> Aut {
    Aut::from_fn(p, 0, move |i| {
        if i == 0 {
            make_c(p, alpha.clone())
        } else {
            Aut::root_power(p, alpha[i as usize - 1] as i64)
        }
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Gen {
    A,
    B,
    C,
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::A => write!(f, "a"),
            Gen::B => write!(f, "b"),
            Gen::C => write!(f, "c"),
        }
    }
}

/// One syllable: a generator with a nonzero exponent mod p.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Syllable {
    pub gen: Gen,
    pub exp: u32,
}

/// A freely reduced word over the family's generators. Adjacent syllables
/// have distinct generators; exponents are nonzero residues mod p. Words
/// are representatives of group elements, never canonical forms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Word {
    family: Family,
    syllables: Vec<Syllable>,
}

impl Word {
    pub fn empty(family: Family) -> Word {
        Word {
            family,
            syllables: Vec::new(),
        }
    }

    /// Builds a reduced word from raw (generator, exponent) pairs.
    pub fn from_parts(family: Family, parts: &[(Gen, i64)]) -> Result<Word> {
        for &(g, _) in parts {
            if !family.kind().allows(g) {
                return Err(Error::Parameter(format!(
                    "generator {} is not valid in a {} word",
                    g,
                    family.kind()
                )));
            }
        }
        let p = family.p();
        let mut syllables: Vec<Syllable> = Vec::new();
        for &(g, e) in parts {
            let e = Fp::reduced(e, p).value();
            push_reduced(&mut syllables, g, e, p);
        }
        Ok(Word { family, syllables })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of b/c-syllables of this representative; an upper bound on
    /// the minimal length over all representatives.
    pub fn syllable_length(&self) -> usize {
        self.syllables
            .iter()
            .filter(|s| s.gen != Gen::A)
            .count()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let p = self.family.p();
        let mut syllables = self.syllables.clone();
        for s in &other.syllables {
            push_reduced(&mut syllables, s.gen, s.exp, p);
        }
        Word {
            family: self.family.clone(),
            syllables,
        }
    }

    pub fn inverse(&self) -> Word {
        let p = self.family.p();
        let mut syllables = Vec::new();
        for s in self.syllables.iter().rev() {
            push_reduced(&mut syllables, s.gen, (p - s.exp) % p, p);
        }
        Word {
            family: self.family.clone(),
            syllables,
        }
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = Word::empty(self.family.clone());
        for _ in 0..e.unsigned_abs() {
            acc = acc.concat(&base);
        }
        acc
    }

    pub fn commutator(x: &Word, y: &Word) -> Word {
        x.inverse().concat(&y.inverse()).concat(x).concat(y)
    }

    pub fn conjugate(&self, by: &Word) -> Word {
        by.inverse().concat(self).concat(by)
    }

    /// The automorphism represented by this word.
    pub fn to_aut(&self) -> Aut {
        let p = self.family.p();
        let mut acc = Aut::identity(p);
        for s in &self.syllables {
            let g = match s.gen {
                Gen::A => self.family.generator_a(),
                Gen::B => self.family.generator_b(),
                Gen::C => self.family.raw_c(),
            };
            acc = acc.compose(&g.pow(s.exp as i64));
        }
        acc
    }

    /// Exponent sums (d_a, d_b, d_c) mod p. d_c is 0 for GGS words. The
    /// word lies in the derived subgroup of its family iff all three sums
    /// vanish.
    pub fn abelianization(&self) -> (Fp, Fp, Fp) {
        let p = self.family.p();
        let mut sums = [0i64; 3];
        for s in &self.syllables {
            let idx = match s.gen {
                Gen::A => 0,
                Gen::B => 1,
                Gen::C => 2,
            };
            sums[idx] += s.exp as i64;
        }
        (
            Fp::reduced(sums[0], p),
            Fp::reduced(sums[1], p),
            Fp::reduced(sums[2], p),
        )
    }

    /// Exact word section at first-level coordinate `i`, defined for words
    /// representing elements of Stab(1). Computed by pushing each syllable
    /// through the generator displays while tracking the moving coordinate.
    pub fn section(&self, i: u8) -> Result<Word> {
        let p = self.family.p();
        if !self.to_aut().is_level_trivial(1)? {
            return Err(Error::Precondition(
                "word section requires a word in Stab(1)".into(),
            ));
        }
        let mut parts: Vec<(Gen, i64)> = Vec::new();
        // Coordinate tracked through the prefix action.
        let mut pos = i as u32;
        for s in &self.syllables {
            match s.gen {
                Gen::A => {
                    // Trivial sections; only the coordinate moves.
                    pos = (pos + s.exp) % p;
                }
                Gen::B => {
                    // b^e @ j = a^{e*alpha_{j+1}} for j < p-1, b^e at p-1.
                    if pos == p - 1 {
                        parts.push((Gen::B, s.exp as i64));
                    } else {
                        let e = (s.exp * self.family.vector.coeff(pos as usize + 1)) % p;
                        if e != 0 {
                            parts.push((Gen::A, e as i64));
                        }
                    }
                }
                Gen::C => {
                    // c^e @ 0 = c^e, c^e @ j = a^{e*alpha_j} for j >= 1.
                    if pos == 0 {
                        parts.push((Gen::C, s.exp as i64));
                    } else {
                        let e = (s.exp * self.family.vector.coeff(pos as usize)) % p;
                        if e != 0 {
                            parts.push((Gen::A, e as i64));
                        }
                    }
                }
            }
        }
        Word::from_parts(self.family.clone(), &parts)
    }
}

fn push_reduced(syllables: &mut Vec<Syllable>, gen: Gen, exp: u32, p: u32) {
    if exp == 0 {
        return;
    }
    if let Some(last) = syllables.last_mut() {
        if last.gen == gen {
            let merged = (last.exp + exp) % p;
            if merged == 0 {
                syllables.pop();
            } else {
                last.exp = merged;
            }
            return;
        }
    }
    syllables.push(Syllable { gen, exp });
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .syllables
            .iter()
            .map(|s| {
                if s.exp == 1 {
                    s.gen.to_string()
                } else {
                    format!("{}^{}", s.gen, s.exp)
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Parses the CLI word literal syntax: `a`, `b`, `c`, `^` for an integer
/// exponent, `*` for concatenation, `[x,y]` for the commutator, and
/// parentheses for grouping. Example: `[b,a]^2 * c^-1`.
pub fn parse_word(input: &str, family: &Family) -> Result<Word> {
    let mut parser = Parser {
        chars: input.char_indices().collect(),
        pos: 0,
        family: family.clone(),
    };
    let w = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.chars.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(w)
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    family: Family,
}

impl Parser {
    fn error(&self, message: &str) -> Error {
        let position = self
            .chars
            .get(self.pos)
            .map(|&(i, _)| i)
            .unwrap_or_else(|| self.chars.last().map(|&(i, c)| i + c.len_utf8()).unwrap_or(0));
        Error::Parse {
            position,
            message: message.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn expr(&mut self) -> Result<Word> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.bump();
                    let next = self.term()?;
                    acc = acc.concat(&next);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Word> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some('^') {
            self.bump();
            let e = self.integer()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Word> {
        self.skip_ws();
        match self.peek() {
            Some('a') | Some('b') | Some('c') => {
                let g = match self.bump().unwrap() {
                    'a' => Gen::A,
                    'b' => Gen::B,
                    _ => Gen::C,
                };
                Word::from_parts(self.family.clone(), &[(g, 1)])
            }
            Some('[') => {
                self.bump();
                let x = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(',') {
                    return Err(self.error("expected ',' in commutator"));
                }
                self.bump();
                let y = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(']') {
                    return Err(self.error("expected ']' closing commutator"));
                }
                self.bump();
                Ok(Word::commutator(&x, &y))
            }
            Some('(') => {
                self.bump();
                let w = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.bump();
                Ok(w)
            }
            Some('1') => {
                self.bump();
                Ok(Word::empty(self.family.clone()))
            }
            _ => Err(self.error("expected a generator, '[', '(' or '1'")),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let mut s = String::new();
        if self.peek() == Some('-') {
            s.push('-');
            self.bump();
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            s.push(self.bump().unwrap());
        }
        s.parse()
            .map_err(|_| self.error("expected an integer exponent"))
    }
}
