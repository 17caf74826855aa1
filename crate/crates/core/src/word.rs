//! Words and polynomials in a free (noncommutative) algebra over the
//! scalar field.
//!
//! An [`Alphabet`] fixes the generators and their rank: letters declared
//! later are larger. Words compare by degree first, then lexicographically
//! in the letter ranks, which is the order the rewriting engine reduces
//! against.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;

use crate::decl::{is_identifier, same_decl, Decl};
use crate::error::{CoreError, Result};
use crate::parse::{parse_expr, Expr};
use crate::scalar::Scalar;

#[derive(Debug)]
pub struct AlphabetData {
    letters: Vec<String>,
}

/// Shared handle to an ordered set of noncommuting generators.
pub type Alphabet = Arc<AlphabetData>;

impl AlphabetData {
    pub fn new<S: Into<String>>(letters: Vec<S>) -> Result<Alphabet> {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if letters.is_empty() {
            return Err(CoreError::InvalidRelation(
                "alphabet must have at least one letter".to_string(),
            ));
        }
        if letters.len() > u8::MAX as usize {
            return Err(CoreError::InvalidRelation(
                "alphabet has too many letters".to_string(),
            ));
        }
        for (i, l) in letters.iter().enumerate() {
            if !is_identifier(l) {
                return Err(CoreError::UndeclaredSymbol(l.clone()));
            }
            if letters[..i].contains(l) {
                return Err(CoreError::InvalidRelation(format!(
                    "duplicate letter `{l}`"
                )));
            }
        }
        Ok(Arc::new(AlphabetData { letters }))
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letter(&self, i: usize) -> &str {
        &self.letters[i]
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn index_of(&self, name: &str) -> Option<u8> {
        self.letters
            .iter()
            .position(|l| l == name)
            .map(|i| i as u8)
    }
}

pub fn same_alphabet(a: &Alphabet, b: &Alphabet) -> bool {
    Arc::ptr_eq(a, b) || a.letters == b.letters
}

/// A word in letter ranks. Ordered by length first, then lexicographically;
/// the empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn single(letter: u8) -> Self {
        Word(vec![letter])
    }

    pub fn from_letters(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Position of the first occurrence of `pattern` as a factor.
    pub fn find(&self, pattern: &Word) -> Option<usize> {
        if pattern.0.is_empty() || pattern.0.len() > self.0.len() {
            return None;
        }
        self.0
            .windows(pattern.0.len())
            .position(|w| w == pattern.0.as_slice())
    }

    /// Position of the last occurrence of `pattern` as a factor.
    pub fn rfind(&self, pattern: &Word) -> Option<usize> {
        if pattern.0.is_empty() || pattern.0.len() > self.0.len() {
            return None;
        }
        (0..=self.0.len() - pattern.0.len())
            .rev()
            .find(|&i| &self.0[i..i + pattern.0.len()] == pattern.0.as_slice())
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    pub fn display(&self, alphabet: &Alphabet) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let letter = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == letter {
                run += 1;
            }
            let name = alphabet.letter(letter as usize);
            if run == 1 {
                parts.push(name.to_string());
            } else {
                parts.push(format!("{name}^{run}"));
            }
            i += run;
        }
        parts.join("*")
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// A finite scalar combination of words.
#[derive(Debug, Clone)]
pub struct WordPoly {
    alphabet: Alphabet,
    decl: Decl,
    terms: BTreeMap<Word, Scalar>,
}

impl WordPoly {
    pub fn zero(alphabet: &Alphabet, decl: &Decl) -> Self {
        WordPoly {
            alphabet: alphabet.clone(),
            decl: decl.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(alphabet: &Alphabet, value: Scalar) -> Self {
        let mut p = WordPoly::zero(alphabet, value.decl());
        p.add_term(Word::empty(), value);
        p
    }

    pub fn one(alphabet: &Alphabet, decl: &Decl) -> Self {
        WordPoly::scalar(alphabet, Scalar::one(decl))
    }

    pub fn letter(alphabet: &Alphabet, decl: &Decl, name: &str) -> Result<Self> {
        let idx = alphabet
            .index_of(name)
            .ok_or_else(|| CoreError::UndeclaredSymbol(name.to_string()))?;
        Ok(WordPoly::from_word(alphabet, decl, Word::single(idx)))
    }

    pub fn from_word(alphabet: &Alphabet, decl: &Decl, word: Word) -> Self {
        let mut p = WordPoly::zero(alphabet, decl);
        p.add_term(word, Scalar::one(decl));
        p
    }

    pub fn from_term(alphabet: &Alphabet, word: Word, coeff: Scalar) -> Self {
        let mut p = WordPoly::zero(alphabet, coeff.decl());
        p.add_term(word, coeff);
        p
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn decl(&self) -> &Decl {
        &self.decl
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Maximum word length present, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    pub fn coefficient(&self, word: &Word) -> Scalar {
        self.terms
            .get(word)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(&self.decl))
    }

    /// Terms in ascending word order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    /// The largest word and its coefficient.
    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, word: Word, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = &*o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn assert_compatible(&self, other: &Self) {
        assert!(
            same_alphabet(&self.alphabet, &other.alphabet),
            "mismatched alphabets"
        );
        assert!(
            same_decl(&self.decl, &other.decl),
            "mismatched parameter declarations"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        WordPoly {
            alphabet: self.alphabet.clone(),
            decl: self.decl.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), -c))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return WordPoly::zero(&self.alphabet, &self.decl);
        }
        WordPoly {
            alphabet: self.alphabet.clone(),
            decl: self.decl.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, v)| (w.clone(), v * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = WordPoly::zero(&self.alphabet, &self.decl);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                out.add_term(wa.concat(wb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = WordPoly::one(&self.alphabet, &self.decl);
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Map each letter to a polynomial over a (possibly different)
    /// alphabet, extending multiplicatively. `images[i]` replaces letter
    /// `i`; all images must share one alphabet and declaration.
    pub fn substitute(&self, images: &[WordPoly]) -> Result<WordPoly> {
        if images.len() != self.alphabet.len() {
            return Err(CoreError::InvalidRelation(format!(
                "substitution needs {} images, got {}",
                self.alphabet.len(),
                images.len()
            )));
        }
        let target_alphabet = images[0].alphabet().clone();
        let target_decl = images[0].decl().clone();
        for img in images {
            if !same_alphabet(img.alphabet(), &target_alphabet)
                || !same_decl(img.decl(), &target_decl)
            {
                return Err(CoreError::DeclMismatch);
            }
        }
        if !same_decl(&self.decl, &target_decl) {
            return Err(CoreError::DeclMismatch);
        }
        let mut out = WordPoly::zero(&target_alphabet, &target_decl);
        for (w, c) in &self.terms {
            let mut factor = WordPoly::scalar(&target_alphabet, c.clone());
            for &l in w.letters() {
                factor = factor.mul(&images[l as usize]);
            }
            out = out.add(&factor);
        }
        Ok(out)
    }

    pub fn parse(alphabet: &Alphabet, decl: &Decl, src: &str) -> Result<Self> {
        let expr = parse_expr(src)?;
        eval_word(alphabet, decl, &expr)
    }
}

impl PartialEq for WordPoly {
    fn eq(&self, other: &Self) -> bool {
        if !same_alphabet(&self.alphabet, &other.alphabet)
            || !same_decl(&self.decl, &other.decl)
            || self.terms.len() != other.terms.len()
        {
            return false;
        }
        self.terms
            .iter()
            .zip(&other.terms)
            .all(|((wa, ca), (wb, cb))| wa == wb && ca == cb)
    }
}

impl fmt::Display for WordPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (word, coeff) in self.terms.iter().rev() {
            let factor = if word.is_empty() {
                None
            } else {
                Some(word.display(&self.alphabet))
            };
            let (negative, body) =
                crate::base::render_coeff_factor(coeff, factor.as_deref());
            if first {
                if negative {
                    write!(f, "-{body}")?;
                } else {
                    write!(f, "{body}")?;
                }
                first = false;
            } else if negative {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

/// Evaluate a parsed expression over an alphabet: identifiers resolve to
/// letters first, then to declared scalar symbols.
pub fn eval_word(alphabet: &Alphabet, decl: &Decl, expr: &Expr) -> Result<WordPoly> {
    enum Val {
        S(Scalar),
        W(WordPoly),
    }
    impl Val {
        fn into_word(self, alphabet: &Alphabet) -> WordPoly {
            match self {
                Val::S(s) => WordPoly::scalar(alphabet, s),
                Val::W(w) => w,
            }
        }
    }
    fn eval(alphabet: &Alphabet, decl: &Decl, expr: &Expr) -> Result<Val> {
        match expr {
            Expr::Int(n) => Ok(Val::S(Scalar::from_rational(
                decl,
                BigRational::from(n.clone()),
            ))),
            Expr::Ident(name) => {
                if alphabet.index_of(name).is_some() {
                    Ok(Val::W(WordPoly::letter(alphabet, decl, name)?))
                } else {
                    Ok(Val::S(Scalar::var(decl, name)?))
                }
            }
            Expr::Neg(inner) => Ok(match eval(alphabet, decl, inner)? {
                Val::S(s) => Val::S(-&s),
                Val::W(w) => Val::W(w.neg()),
            }),
            Expr::Add(a, b) => {
                let (x, y) = (eval(alphabet, decl, a)?, eval(alphabet, decl, b)?);
                Ok(match (x, y) {
                    (Val::S(x), Val::S(y)) => Val::S(&x + &y),
                    (x, y) => Val::W(
                        x.into_word(alphabet)
                            .add(&y.into_word(alphabet)),
                    ),
                })
            }
            Expr::Sub(a, b) => {
                let (x, y) = (eval(alphabet, decl, a)?, eval(alphabet, decl, b)?);
                Ok(match (x, y) {
                    (Val::S(x), Val::S(y)) => Val::S(&x - &y),
                    (x, y) => Val::W(
                        x.into_word(alphabet)
                            .sub(&y.into_word(alphabet)),
                    ),
                })
            }
            Expr::Mul(a, b) => {
                let (x, y) = (eval(alphabet, decl, a)?, eval(alphabet, decl, b)?);
                Ok(match (x, y) {
                    (Val::S(x), Val::S(y)) => Val::S(&x * &y),
                    (x, y) => Val::W(
                        x.into_word(alphabet)
                            .mul(&y.into_word(alphabet)),
                    ),
                })
            }
            Expr::Div(a, b) => {
                let x = eval(alphabet, decl, a)?;
                let Val::S(y) = eval(alphabet, decl, b)? else {
                    return Err(CoreError::Precondition(
                        "division by a word is not supported".to_string(),
                    ));
                };
                let inv = y.recip()?;
                Ok(match x {
                    Val::S(s) => Val::S(&s * &inv),
                    Val::W(w) => Val::W(w.scale(&inv)),
                })
            }
            Expr::Pow(base, exp) => match eval(alphabet, decl, base)? {
                Val::S(s) => Ok(Val::S(s.pow(*exp)?)),
                Val::W(w) => {
                    let e = u32::try_from(*exp).map_err(|_| {
                        CoreError::InvalidExponent(format!(
                            "words cannot be raised to the power {exp}"
                        ))
                    })?;
                    Ok(Val::W(w.pow(e)))
                }
            },
        }
    }
    Ok(eval(alphabet, decl, expr)?.into_word(alphabet))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decl::FieldDecl;

    fn setup() -> (Alphabet, Decl) {
        (
            AlphabetData::new(vec!["e", "f", "h"]).unwrap(),
            FieldDecl::params(vec!["q", "p0"]),
        )
    }

    #[test]
    fn word_order_is_degree_then_rank() {
        let (a, _) = setup();
        let e = Word::single(a.index_of("e").unwrap());
        let f = Word::single(a.index_of("f").unwrap());
        let h = Word::single(a.index_of("h").unwrap());
        assert!(e < f && f < h);
        let he = h.concat(&e);
        let ef = e.concat(&f);
        assert!(ef < he, "same degree compares by rank from the left");
        assert!(h < ef, "longer words dominate");
        assert!(Word::empty() < e);
    }

    #[test]
    fn multiplication_is_noncommutative() {
        let (a, d) = setup();
        let e = WordPoly::letter(&a, &d, "e").unwrap();
        let f = WordPoly::letter(&a, &d, "f").unwrap();
        let ef = e.mul(&f);
        let fe = f.mul(&e);
        assert_ne!(ef, fe);
        assert!(!ef.sub(&fe).is_zero());
    }

    #[test]
    fn parse_and_display_round_trip() {
        let (a, d) = setup();
        for src in [
            "h*f - q*f*h - 2*p0*f",
            "e*f + q*f*e + (q + 1)/4*h^2",
            "f^3*h - 1",
            "-2*e",
        ] {
            let p = WordPoly::parse(&a, &d, src).unwrap();
            let reparsed = WordPoly::parse(&a, &d, &p.to_string()).unwrap();
            assert_eq!(p, reparsed, "round trip through `{src}`");
        }
        let p = WordPoly::parse(&a, &d, "h*f*f - f*f").unwrap();
        assert_eq!(p.to_string(), "h*f^2 - f^2");
    }

    #[test]
    fn find_factors_in_words() {
        let (a, _) = setup();
        let e = a.index_of("e").unwrap();
        let f = a.index_of("f").unwrap();
        let h = a.index_of("h").unwrap();
        let w = Word::from_letters(vec![h, f, f, e]);
        let hf = Word::from_letters(vec![h, f]);
        let fe = Word::from_letters(vec![f, e]);
        let ff = Word::from_letters(vec![f, f]);
        assert_eq!(w.find(&hf), Some(0));
        assert_eq!(w.find(&fe), Some(2));
        assert_eq!(w.find(&ff), Some(1));
        assert_eq!(w.rfind(&ff), Some(1));
        assert_eq!(w.find(&Word::from_letters(vec![e, e])), None);
    }

    #[test]
    fn substitution_is_multiplicative() {
        let (a, d) = setup();
        let target = AlphabetData::new(vec!["x", "y", "z"]).unwrap();
        let images = vec![
            WordPoly::parse(&target, &d, "z").unwrap(),
            WordPoly::parse(&target, &d, "x").unwrap(),
            WordPoly::parse(&target, &d, "2*p0*y + 1").unwrap(),
        ];
        let p = WordPoly::parse(&a, &d, "h*f - q*f*h").unwrap();
        let image = p.substitute(&images).unwrap();
        let expect =
            WordPoly::parse(&target, &d, "(2*p0*y + 1)*x - q*x*(2*p0*y + 1)").unwrap();
        assert_eq!(image, expect);
    }

    #[test]
    fn alphabet_rejects_duplicates_and_bad_names() {
        assert!(AlphabetData::new(vec!["e", "e"]).is_err());
        assert!(AlphabetData::new(vec!["2x"]).is_err());
        assert!(AlphabetData::new(Vec::<String>::new()).is_err());
    }

    #[test]
    fn scalars_commute_through_words() {
        let (a, d) = setup();
        let p = WordPoly::parse(&a, &d, "q*e*f").unwrap();
        let r = WordPoly::parse(&a, &d, "e*q*f").unwrap();
        assert_eq!(p, r);
    }
}
