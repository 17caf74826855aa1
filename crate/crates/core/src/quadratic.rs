//! Quadratic rewriting: reduction systems whose left-hand sides are
//! two-letter words, diamond-lemma confluence on the length-3 overlaps,
//! normal-word counting, and the structural checks built on normal forms
//! (central elements, substitution isomorphisms, twisted derivation data,
//! scalar representations, and the conformal coefficient test).

use std::collections::BTreeMap;

use crate::decl::{same_decl, Decl};
use crate::error::{CoreError, Result};
use crate::parse::parse_scalar;
use crate::scalar::Scalar;
use crate::word::{same_alphabet, Alphabet, AlphabetData, Word, WordPoly};

/// Which reducible factor of a word a rewriting step replaces. Confluent
/// systems produce the same normal form either way.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RewriteStrategy {
    Leftmost,
    Rightmost,
}

/// A reduction `lhs -> rhs` where `lhs` is a two-letter word and every
/// word of `rhs` precedes it in the degree-then-rank order.
#[derive(Debug, Clone)]
pub struct RewriteRule {
    pub lhs: Word,
    pub rhs: WordPoly,
}

/// A set of quadratic reductions with pairwise distinct left-hand sides.
#[derive(Debug, Clone)]
pub struct RewriteSystem {
    alphabet: Alphabet,
    decl: Decl,
    rules: BTreeMap<Word, WordPoly>,
}

impl RewriteSystem {
    /// Orient each relation by its leading term: a relation
    /// `c*w + (lower terms) = 0` with `c != 0` becomes the rule
    /// `w -> -(1/c)*(lower terms)`. The leading word must have length
    /// exactly two and the leading words must be pairwise distinct.
    pub fn from_relations(
        alphabet: &Alphabet,
        decl: &Decl,
        relations: &[WordPoly],
    ) -> Result<Self> {
        let mut rules = BTreeMap::new();
        for relation in relations {
            if !same_alphabet(relation.alphabet(), alphabet)
                || !same_decl(relation.decl(), decl)
            {
                return Err(CoreError::DeclMismatch);
            }
            let Some((lead, coeff)) = relation.leading() else {
                return Err(CoreError::InvalidRelation(
                    "the zero relation cannot be oriented".to_string(),
                ));
            };
            if lead.len() != 2 {
                return Err(CoreError::InvalidRelation(format!(
                    "leading word {} must have length 2",
                    lead.display(alphabet)
                )));
            }
            let scale = -&coeff.recip()?;
            let mut rhs = relation.scale(&scale);
            rhs.add_term(lead.clone(), Scalar::one(decl));
            if rules.insert(lead.clone(), rhs).is_some() {
                return Err(CoreError::InvalidRelation(format!(
                    "two relations share the leading word {}",
                    lead.display(alphabet)
                )));
            }
        }
        Ok(RewriteSystem {
            alphabet: alphabet.clone(),
            decl: decl.clone(),
            rules,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn decl(&self) -> &Decl {
        &self.decl
    }

    pub fn rules(&self) -> impl Iterator<Item = RewriteRule> + '_ {
        self.rules.iter().map(|(lhs, rhs)| RewriteRule {
            lhs: lhs.clone(),
            rhs: rhs.clone(),
        })
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    /// The relations `lhs - rhs`, reconstructed from the oriented rules.
    pub fn relations(&self) -> Vec<WordPoly> {
        self.rules
            .iter()
            .map(|(lhs, rhs)| {
                WordPoly::from_term(&self.alphabet, lhs.clone(), Scalar::one(&self.decl))
                    .sub(rhs)
            })
            .collect()
    }

    /// Position of the redex the strategy selects, if the word is
    /// reducible.
    fn find_redex(&self, word: &Word, strategy: RewriteStrategy) -> Option<(usize, &WordPoly)> {
        let letters = word.letters();
        if letters.len() < 2 {
            return None;
        }
        let positions: Box<dyn Iterator<Item = usize>> = match strategy {
            RewriteStrategy::Leftmost => Box::new(0..letters.len() - 1),
            RewriteStrategy::Rightmost => Box::new((0..letters.len() - 1).rev()),
        };
        for i in positions {
            let factor = word.slice(i..i + 2);
            if let Some(rhs) = self.rules.get(&factor) {
                return Some((i, rhs));
            }
        }
        None
    }

    /// True when no rule applies anywhere in the word.
    pub fn is_normal(&self, word: &Word) -> bool {
        self.find_redex(word, RewriteStrategy::Leftmost).is_none()
    }

    /// Fully reduce a polynomial, spending at most `budget` rule
    /// applications. Terms are processed largest first, so every rewrite
    /// strictly lowers the largest unprocessed word and the loop
    /// terminates whenever the budget allows.
    pub fn normal_form(
        &self,
        p: &WordPoly,
        strategy: RewriteStrategy,
        budget: usize,
    ) -> Result<WordPoly> {
        if !same_alphabet(p.alphabet(), &self.alphabet) || !same_decl(p.decl(), &self.decl)
        {
            return Err(CoreError::DeclMismatch);
        }
        let mut pending: BTreeMap<Word, Scalar> = p
            .terms()
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect();
        let mut result = WordPoly::zero(&self.alphabet, &self.decl);
        let mut steps = 0usize;
        while let Some((word, coeff)) = pending.pop_last() {
            if coeff.is_zero() {
                continue;
            }
            let Some((pos, rhs)) = self.find_redex(&word, strategy) else {
                result.add_term(word, coeff);
                continue;
            };
            if steps == budget {
                return Err(CoreError::BudgetExhausted);
            }
            steps += 1;
            let prefix = word.slice(0..pos);
            let suffix = word.slice(pos + 2..word.len());
            for (rw, rc) in rhs.terms() {
                let replaced = prefix.concat(rw).concat(&suffix);
                let contribution = &coeff * rc;
                match pending.remove(&replaced) {
                    None => {
                        if !contribution.is_zero() {
                            pending.insert(replaced, contribution);
                        }
                    }
                    Some(existing) => {
                        let sum = &existing + &contribution;
                        if !sum.is_zero() {
                            pending.insert(replaced, sum);
                        }
                    }
                }
            }
        }
        Ok(result)
    }

    /// Resolve every length-3 overlap ambiguity between rule pairs: for
    /// rules `ab -> r` and `bc -> s`, the word `abc` reduces both as
    /// `r*c` and as `a*s`; the system is confluent exactly when the two
    /// normal forms agree for every overlap.
    pub fn check_confluence(&self, budget: usize) -> Result<ConfluenceReport> {
        let mut residuals = Vec::new();
        let mut overlaps = 0usize;
        for (lhs1, rhs1) in &self.rules {
            for (lhs2, rhs2) in &self.rules {
                if lhs1.letters()[1] != lhs2.letters()[0] {
                    continue;
                }
                overlaps += 1;
                let a = lhs1.slice(0..1);
                let c = lhs2.slice(1..2);
                let word = a.concat(lhs2);
                let left = rhs1.mul(&WordPoly::from_word(
                    &self.alphabet,
                    &self.decl,
                    c,
                ));
                let right =
                    WordPoly::from_word(&self.alphabet, &self.decl, a).mul(rhs2);
                let residual = self
                    .normal_form(&left, RewriteStrategy::Leftmost, budget)?
                    .sub(&self.normal_form(&right, RewriteStrategy::Leftmost, budget)?);
                if !residual.is_zero() {
                    residuals.push((word.display(&self.alphabet), residual));
                }
            }
        }
        Ok(ConfluenceReport {
            confluent: residuals.is_empty(),
            overlaps,
            residuals,
        })
    }

    /// Number of words of the given degree containing no rule's
    /// left-hand side as a factor, counted by dynamic programming over
    /// the final letter.
    pub fn count_normal_words(&self, degree: usize) -> u64 {
        if degree == 0 {
            return 1;
        }
        let n = self.alphabet.len();
        let mut blocked = vec![vec![false; n]; n];
        for lhs in self.rules.keys() {
            let l = lhs.letters();
            blocked[l[0] as usize][l[1] as usize] = true;
        }
        let mut counts = vec![1u64; n];
        for _ in 1..degree {
            let mut next = vec![0u64; n];
            for (last, count) in counts.iter().enumerate() {
                if *count == 0 {
                    continue;
                }
                for (succ, next_count) in next.iter_mut().enumerate() {
                    if !blocked[last][succ] {
                        *next_count += count;
                    }
                }
            }
            counts = next;
        }
        counts.iter().sum()
    }
}

/// Outcome of the overlap test: `overlaps` counts the resolved
/// ambiguities; a nonzero residual is the difference of the two normal
/// forms of an overlap word.
#[derive(Debug, Clone)]
pub struct ConfluenceReport {
    pub confluent: bool,
    pub overlaps: usize,
    pub residuals: Vec<(String, WordPoly)>,
}

/// Outcome of the centrality test for an element Ω against a diagonal-like
/// twist τ: for each generator z the residual nf(τ(z)·Ω) − nf(Ω·z).
#[derive(Debug, Clone)]
pub struct NormalityReport {
    pub normal: bool,
    pub residuals: Vec<(String, WordPoly)>,
}

/// Check that Ω is normal for the twist τ: nf(τ(z)·Ω) = nf(Ω·z) for every
/// generator z. With τ = id this is centrality of Ω.
pub fn check_normal_element(
    system: &RewriteSystem,
    omega: &WordPoly,
    tau: &[WordPoly],
    budget: usize,
) -> Result<NormalityReport> {
    let alphabet = system.alphabet();
    if tau.len() != alphabet.len() {
        return Err(CoreError::Precondition(
            "the twist must provide one image per generator".to_string(),
        ));
    }
    let mut residuals = Vec::new();
    for (i, name) in alphabet.letters().iter().enumerate() {
        let z = WordPoly::letter(alphabet, system.decl(), name)?;
        let lhs = system.normal_form(&tau[i].mul(omega), RewriteStrategy::Leftmost, budget)?;
        let rhs = system.normal_form(&omega.mul(&z), RewriteStrategy::Leftmost, budget)?;
        let residual = lhs.sub(&rhs);
        if !residual.is_zero() {
            residuals.push((name.clone(), residual));
        }
    }
    Ok(NormalityReport {
        normal: residuals.is_empty(),
        residuals,
    })
}

/// Outcome of mapping one presentation into another: residual normal
/// forms of the substituted source relations, indexed by relation.
#[derive(Debug, Clone)]
pub struct SubstitutionReport {
    pub holds: bool,
    pub residuals: Vec<(usize, WordPoly)>,
}

/// Check that the assignment generator -> image extends to a homomorphism:
/// every source relation, rewritten through the images, must reduce to
/// zero in the target system.
pub fn check_substitution_iso(
    relations: &[WordPoly],
    images: &[WordPoly],
    target: &RewriteSystem,
    budget: usize,
) -> Result<SubstitutionReport> {
    let mut residuals = Vec::new();
    for (index, relation) in relations.iter().enumerate() {
        let mapped = relation.substitute(images)?;
        let reduced = target.normal_form(&mapped, RewriteStrategy::Leftmost, budget)?;
        if !reduced.is_zero() {
            residuals.push((index, reduced));
        }
    }
    Ok(SubstitutionReport {
        holds: residuals.is_empty(),
        residuals,
    })
}

/// Extend letter images of an endomorphism ς and a ς-twisted derivation to
/// a word polynomial by the skew Leibniz rule
/// ∂(l·w) = ∂(l)·w + ς(l)·∂(w), acting as zero on scalars. All images
/// must live in the polynomial's own alphabet.
pub fn skew_leibniz_extend(
    endo: &[WordPoly],
    der: &[WordPoly],
    p: &WordPoly,
) -> Result<WordPoly> {
    let alphabet = p.alphabet();
    let decl = p.decl();
    if endo.len() != alphabet.len() || der.len() != alphabet.len() {
        return Err(CoreError::Precondition(
            "endomorphism and derivation must provide one image per generator".to_string(),
        ));
    }
    for image in endo.iter().chain(der) {
        if !same_alphabet(image.alphabet(), alphabet) || !same_decl(image.decl(), decl) {
            return Err(CoreError::DeclMismatch);
        }
    }
    let mut out = WordPoly::zero(alphabet, decl);
    for (word, coeff) in p.terms() {
        let mut derived = WordPoly::zero(alphabet, decl);
        // Right-to-left accumulation: derived(l·w) = der[l]·w + endo[l]·derived(w).
        for (offset, letter) in word.letters().iter().enumerate().rev() {
            let tail = WordPoly::from_word(alphabet, decl, word.slice(offset + 1..word.len()));
            derived = der[*letter as usize]
                .mul(&tail)
                .add(&endo[*letter as usize].mul(&derived));
        }
        out = out.add(&derived.scale(coeff));
    }
    Ok(out)
}

/// Whether an endomorphism and a twisted derivation, both given on
/// generators, descend to the quotient by the system's relations.
#[derive(Debug, Clone)]
pub struct SkewExtensionReport {
    pub endomorphism_ok: bool,
    pub derivation_ok: bool,
    pub endomorphism_residuals: Vec<(usize, WordPoly)>,
    pub derivation_residuals: Vec<(usize, WordPoly)>,
}

impl SkewExtensionReport {
    pub fn ok(&self) -> bool {
        self.endomorphism_ok && self.derivation_ok
    }
}

/// Check that ς maps each relation to zero and that the skew Leibniz
/// extension of ∂ does as well, both modulo the rewrite system.
pub fn check_skew_extension(
    system: &RewriteSystem,
    endo: &[WordPoly],
    der: &[WordPoly],
    budget: usize,
) -> Result<SkewExtensionReport> {
    let mut endomorphism_residuals = Vec::new();
    let mut derivation_residuals = Vec::new();
    for (index, relation) in system.relations().iter().enumerate() {
        let mapped = relation.substitute(endo)?;
        let reduced = system.normal_form(&mapped, RewriteStrategy::Leftmost, budget)?;
        if !reduced.is_zero() {
            endomorphism_residuals.push((index, reduced));
        }
        let derived = skew_leibniz_extend(endo, der, relation)?;
        let reduced = system.normal_form(&derived, RewriteStrategy::Leftmost, budget)?;
        if !reduced.is_zero() {
            derivation_residuals.push((index, reduced));
        }
    }
    Ok(SkewExtensionReport {
        endomorphism_ok: endomorphism_residuals.is_empty(),
        derivation_ok: derivation_residuals.is_empty(),
        endomorphism_residuals,
        derivation_residuals,
    })
}

fn letter_image(alphabet: &Alphabet, decl: &Decl, name: &str, c: &Scalar) -> Result<WordPoly> {
    Ok(WordPoly::letter(alphabet, decl, name)?.scale(c))
}

/// The quantum-plane-with-derivation data: on F{y, z} / (yz − q⁻¹zy),
/// the endomorphism ς(y) = q⁻¹y, ς(z) = q⁻²z and the ς-derivation
/// ∂(y) = 0, ∂(z) = −q⁻²(a·y + b). Returns the consistency report of
/// both maps against the defining relation.
pub fn check_ore_data(
    decl: &Decl,
    q: &Scalar,
    a: &Scalar,
    b: &Scalar,
) -> Result<SkewExtensionReport> {
    let (system, endo, der) = ore_data(decl, q, a, b)?;
    check_skew_extension(&system, &endo, &der, 10_000)
}

/// The rewrite system and generator images used by `check_ore_data`,
/// exposed so variants of the derivation can be tested directly.
pub fn ore_data(
    decl: &Decl,
    q: &Scalar,
    a: &Scalar,
    b: &Scalar,
) -> Result<(RewriteSystem, Vec<WordPoly>, Vec<WordPoly>)> {
    let alphabet = AlphabetData::new(vec!["y", "z"])?;
    let q_inv = q.recip()?;
    let y = WordPoly::letter(&alphabet, decl, "y")?;
    let z = WordPoly::letter(&alphabet, decl, "z")?;
    let relation = y.mul(&z).sub(&z.mul(&y).scale(&q_inv));
    let system = RewriteSystem::from_relations(&alphabet, decl, &[relation])?;
    let q_inv2 = &q_inv * &q_inv;
    let endo = vec![
        letter_image(&alphabet, decl, "y", &q_inv)?,
        letter_image(&alphabet, decl, "z", &q_inv2)?,
    ];
    let neg = -&q_inv2;
    let der_z = y
        .scale(a)
        .add(&WordPoly::scalar(&alphabet, b.clone()))
        .scale(&neg);
    let der = vec![WordPoly::zero(&alphabet, decl), der_z];
    Ok((system, endo, der))
}

/// Decide conformality of a seven-coefficient family from its defining
/// vector: with coefficients (a₁, …, a₇) indexed from zero and the
/// product a₁a₂a₃a₅a₆a₇ assumed nonzero, the family is conformal exactly
/// when a₆ = a₁ and a₇ = a₂.
pub fn conformal_vector_check(coefficients: &[Scalar; 7]) -> Result<bool> {
    let gate = [0usize, 1, 2, 4, 5, 6];
    for index in gate {
        if coefficients[index].is_zero() {
            return Err(CoreError::Precondition(format!(
                "conformality requires coefficient {} to be nonzero",
                index + 1
            )));
        }
    }
    Ok(coefficients[5] == coefficients[0] && coefficients[6] == coefficients[1])
}

/// Evaluate relations at a scalar point (each generator replaced by a
/// commuting scalar); true when every relation vanishes.
pub fn check_scalar_rep(relations: &[WordPoly], values: &[Scalar]) -> Result<bool> {
    for relation in relations {
        if values.len() != relation.alphabet().len() {
            return Err(CoreError::Precondition(
                "the representation must assign one scalar per generator".to_string(),
            ));
        }
        let mut total = Scalar::zero(relation.decl());
        for (word, coeff) in relation.terms() {
            let mut product = coeff.clone();
            for letter in word.letters() {
                product = &product * &values[*letter as usize];
            }
            total = &total + &product;
        }
        if !total.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The three-generator quadratic algebra on e, f, h with parameters q and
/// p0: relations he = q⁻¹eh + 2q⁻¹p₀e, hf = qfh − 2p₀f and
/// fe = q⁻²ef − q⁻²(q+1)p₀/2·h, oriented as a rewrite system with normal
/// words e^a f^b h^c.
pub fn quadratic_u(decl: &Decl) -> Result<RewriteSystem> {
    let alphabet = AlphabetData::new(vec!["e", "f", "h"])?;
    let relations = [
        "h*e - 1/q*e*h - 2/q*p0*e",
        "h*f - q*f*h + 2*p0*f",
        "f*e - 1/q^2*e*f + (q + 1)/(2*q^2)*p0*h",
    ]
    .iter()
    .map(|src| WordPoly::parse(&alphabet, decl, src))
    .collect::<Result<Vec<_>>>()?;
    RewriteSystem::from_relations(&alphabet, decl, &relations)
}

/// The three-generator quadratic algebra on x, y, z with parameters q and
/// p0: y and z q-commute past x and each other except for the inhomogeneous
/// relation zx = q²xz + p₀²(1+q⁻¹)y + p₀²(q+1)/(q−1).
pub fn quadratic_w(decl: &Decl) -> Result<RewriteSystem> {
    let alphabet = AlphabetData::new(vec!["x", "y", "z"])?;
    let relations = [
        "y*x - q*x*y",
        "z*y - q*y*z",
        "z*x - q^2*x*z - p0^2*(1 + 1/q)*y - p0^2*(q + 1)/(q - 1)",
    ]
    .iter()
    .map(|src| WordPoly::parse(&alphabet, decl, src))
    .collect::<Result<Vec<_>>>()?;
    RewriteSystem::from_relations(&alphabet, decl, &relations)
}

/// The normal element ef + qfe + (q+1)/4·h² of `quadratic_u`, together
/// with its twist τ(e) = q⁻²e, τ(f) = q²f, τ(h) = h.
pub fn quadratic_u_casimir(system: &RewriteSystem) -> Result<(WordPoly, Vec<WordPoly>)> {
    let alphabet = system.alphabet();
    let decl = system.decl();
    let omega = WordPoly::parse(alphabet, decl, "e*f + q*f*e + (q + 1)/4*h*h")?;
    let q_inv2 = parse_scalar(decl, "1/q^2")?;
    let q2 = parse_scalar(decl, "q^2")?;
    let tau = vec![
        letter_image(alphabet, decl, "e", &q_inv2)?,
        letter_image(alphabet, decl, "f", &q2)?,
        WordPoly::letter(alphabet, decl, "h")?,
    ];
    Ok((omega, tau))
}
