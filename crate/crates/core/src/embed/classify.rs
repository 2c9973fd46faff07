//! Bounded-length strongness and linearity tests for candidate embeddings.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmat::rational::{nullspace, solve_columns};
use crate::exactmat::ExactMatrix;
use crate::numring::{lcm, CycElement};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CandidateGate {
    pub source: ExactMatrix,
    pub image: ExactMatrix,
}

/// A map gate ↦ (e(G), φ_G) with a shared catalyst projector.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Candidate {
    pub name: String,
    pub projector: ExactMatrix,
    pub gates: BTreeMap<String, CandidateGate>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    NotStrong,
    StrongNotLinear,
    LinearConsistent,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::NotStrong => "not_strong",
            Verdict::StrongNotLinear => "strong_not_linear",
            Verdict::LinearConsistent => "linear_consistent",
        })
    }
}

/// Σ cᵢ e(wᵢ) = 0 (or, for the adjoint and tensor laws, the stated identity) with the image side failing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearRelation {
    pub law: String,
    pub terms: Vec<(String, Vec<String>)>,
}

impl LinearRelation {
    /// Terms as (coefficient, word) with words joined without separators.
    pub fn normalized(&self) -> Vec<(String, String)> {
        self.terms.iter().map(|(c, w)| (c.clone(), w.concat())).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// e(left) = e(right) but the images differ.
    WordPair { left: Vec<String>, right: Vec<String> },
    Linear(LinearRelation),
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub candidate: String,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    /// Every linearity violation found, in search order.
    pub violations: Vec<LinearRelation>,
    pub words_checked: usize,
    pub distinct_evaluations: usize,
    pub max_word_len: usize,
}

struct Word {
    letters: Vec<usize>,
    e: ExactMatrix,
    phi: ExactMatrix,
}

fn coords(m: &ExactMatrix, l: u32) -> Vec<BigRational> {
    m.entries().iter().flat_map(|x| x.lift(l).expect("conductor divides").to_rational_vec()).collect()
}

fn combo(ms: &[&ExactMatrix], cs: &[BigRational]) -> Result<ExactMatrix> {
    let mut acc = ExactMatrix::zeros(ms[0].rows(), ms[0].cols());
    for (m, c) in ms.iter().zip(cs) {
        if !c.is_zero() {
            acc = acc.add(&m.scale(&CycElement::from_rational(c.clone())))?;
        }
    }
    Ok(acc)
}

/// The lifted evaluation of Par(A, B) from images φ_A (mk) and φ_B (nk).
fn par_image(pa: &ExactMatrix, pb: &ExactMatrix, m: usize, n: usize, k: usize) -> Result<ExactMatrix> {
    let im = ExactMatrix::identity(m);
    let a = im.tensor(&ExactMatrix::swap_matrix(n, k));
    let b = pa.tensor(&ExactMatrix::identity(n));
    let c = im.tensor(&ExactMatrix::swap_matrix(k, n));
    let d = im.tensor(pb);
    d.mul(&c)?.mul(&b)?.mul(&a)
}

impl Candidate {
    pub fn new(name: impl Into<String>, projector: ExactMatrix, gates: BTreeMap<String, CandidateGate>) -> Self {
        Candidate { name: name.into(), projector, gates }
    }

    pub fn k(&self) -> usize {
        self.projector.rows()
    }

    /// First gate violating e(φ)(I⊗Π) = e(G)⊗Π, if any.
    pub fn catalytic_failure(&self) -> Result<Option<String>> {
        for (name, g) in &self.gates {
            let ip = ExactMatrix::identity(g.source.cols()).tensor(&self.projector);
            if g.image.mul(&ip)? != g.source.tensor(&self.projector) {
                return Ok(Some(name.clone()));
            }
        }
        Ok(None)
    }
}

pub fn classify(cand: &Candidate, max_word_len: usize) -> Result<ClassificationReport> {
    if let Some(g) = cand.catalytic_failure()? {
        return Err(Error::TemplateMismatch(g));
    }
    let names: Vec<String> = cand.gates.keys().cloned().collect();
    let gates: Vec<&CandidateGate> = cand.gates.values().collect();
    let n = gates.first().map(|g| g.source.rows()).ok_or(Error::Unsupported("empty candidate".into()))?;
    if gates.iter().any(|g| g.source.rows() != n) {
        return Err(Error::Unsupported("classification needs gates of one dimension".into()));
    }
    let k = cand.k();
    let word_names = |w: &[usize]| w.iter().map(|&i| names[i].clone()).collect::<Vec<_>>();

    // Shortlex enumeration; a word g₁…g_L denotes g₁∘…∘g_L.
    let mut words: Vec<Word> = Vec::new();
    let mut frontier: Vec<usize> = Vec::new();
    for (i, g) in gates.iter().enumerate() {
        words.push(Word { letters: vec![i], e: g.source.clone(), phi: g.image.clone() });
        frontier.push(words.len() - 1);
    }
    for _ in 1..max_word_len {
        let mut next = Vec::new();
        for &w in &frontier {
            for (i, g) in gates.iter().enumerate() {
                let mut letters = words[w].letters.clone();
                letters.push(i);
                let e = words[w].e.mul(&g.source)?;
                let phi = words[w].phi.mul(&g.image)?;
                words.push(Word { letters, e, phi });
                next.push(words.len() - 1);
            }
        }
        frontier = next;
    }

    let mut reps: Vec<usize> = Vec::new();
    for i in 0..words.len() {
        match reps.iter().find(|&&r| words[r].e == words[i].e) {
            Some(&r) => {
                if words[r].phi != words[i].phi {
                    return Ok(ClassificationReport {
                        candidate: cand.name.clone(),
                        verdict: Verdict::NotStrong,
                        witness: Some(Witness::WordPair {
                            left: word_names(&words[i].letters),
                            right: word_names(&words[r].letters),
                        }),
                        violations: Vec::new(),
                        words_checked: i + 1,
                        distinct_evaluations: reps.len(),
                        max_word_len,
                    });
                }
            }
            None => reps.push(i),
        }
    }

    let le = reps.iter().fold(1, |acc, &r| lcm(acc, words[r].e.conductor()));
    let vecs: Vec<Vec<BigRational>> = reps.iter().map(|&r| coords(&words[r].e, le)).collect();
    let mut violations = Vec::new();
    let relation = |law: &str, idx: &[usize], cs: &[BigRational]| LinearRelation {
        law: law.into(),
        terms: idx
            .iter()
            .zip(cs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&i, c)| (c.to_string(), word_names(&words[reps[i]].letters)))
            .collect(),
    };
    let normalize = |mut cs: Vec<BigRational>| {
        if let Some(f) = cs.iter().find(|c| !c.is_zero()).cloned() {
            for c in cs.iter_mut() {
                *c /= &f;
            }
        }
        cs
    };
    let check = |idx: &[usize], cs: &[BigRational]| -> Result<bool> {
        let ms: Vec<&ExactMatrix> = idx.iter().map(|&i| &words[reps[i]].phi).collect();
        Ok(combo(&ms, cs)?.is_zero())
    };
    let rank_kernel = |idx: &[usize]| -> Vec<Vec<BigRational>> {
        let rows: Vec<Vec<BigRational>> =
            (0..vecs[0].len()).map(|r| idx.iter().map(|&i| vecs[i][r].clone()).collect()).collect();
        nullspace(&rows, idx.len())
    };

    // Minimal relations on two and three evaluations.
    let u = reps.len();
    let mut dependent_pairs = std::collections::HashSet::new();
    for a in 0..u {
        for b in a + 1..u {
            let ker = rank_kernel(&[a, b]);
            if let Some(c) = ker.into_iter().next() {
                dependent_pairs.insert((a, b));
                let c = normalize(c);
                if !check(&[a, b], &c)? {
                    violations.push(relation("additive", &[a, b], &c));
                }
            }
        }
    }
    for a in 0..u {
        for b in a + 1..u {
            if dependent_pairs.contains(&(a, b)) {
                continue;
            }
            for c in b + 1..u {
                if dependent_pairs.contains(&(a, c)) || dependent_pairs.contains(&(b, c)) {
                    continue;
                }
                let ker = rank_kernel(&[a, b, c]);
                if let Some(v) = ker.into_iter().next() {
                    let v = normalize(v);
                    if !check(&[a, b, c], &v)? {
                        violations.push(relation("additive", &[a, b, c], &v));
                    }
                }
            }
        }
    }

    // The whole kernel.
    let all: Vec<usize> = (0..u).collect();
    for v in rank_kernel(&all) {
        if !check(&all, &v)? {
            violations.push(relation("additive", &all, &normalize(v)));
        }
    }

    // Adjoint: e(w)† = Σ cᵢ e(wᵢ) forces φ(w)† = Σ cᵢ φ(wᵢ).
    for a in 0..u {
        let w = &words[reps[a]];
        let target = coords(&w.e.dagger(), le);
        if let Some(cs) = solve_columns(&vecs, &target) {
            let ms: Vec<&ExactMatrix> = reps.iter().map(|&r| &words[r].phi).collect();
            if combo(&ms, &cs)? != w.phi.dagger() {
                let mut rel = relation("adjoint", &all, &cs);
                rel.terms.insert(0, ("-1".into(), {
                    let mut d = word_names(&w.letters);
                    d.push("†".into());
                    d
                }));
                violations.push(rel);
            }
        }
    }

    // Tensor law with rational coefficients: lift(Par(C, B)) = e(C)⊗φ(B) when e(C) is rational.
    for a in 0..u {
        let wa = &words[reps[a]];
        if !wa.e.entries().iter().all(|x| x.as_rational().is_some()) {
            continue;
        }
        for b in 0..u {
            let wb = &words[reps[b]];
            if par_image(&wa.phi, &wb.phi, n, n, k)? != wa.e.tensor(&wb.phi) {
                violations.push(LinearRelation {
                    law: "tensor".into(),
                    terms: vec![
                        (BigRational::one().to_string(), word_names(&wa.letters)),
                        (BigRational::one().to_string(), word_names(&wb.letters)),
                    ],
                });
            }
        }
    }

    let verdict = if violations.is_empty() { Verdict::LinearConsistent } else { Verdict::StrongNotLinear };
    Ok(ClassificationReport {
        candidate: cand.name.clone(),
        verdict,
        // Additive relations before the adjoint and tensor laws, then fewest letters, then search order.
        witness: violations
            .iter()
            .min_by_key(|v| (v.law != "additive", v.terms.iter().map(|(_, w)| w.len()).sum::<usize>()))
            .cloned()
            .map(Witness::Linear),
        violations,
        words_checked: words.len(),
        distinct_evaluations: u,
        max_word_len,
    })
}
