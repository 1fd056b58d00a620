//! Degree-by-degree computation of a graded quotient
//! `B = k[central] Q̄ / I` by exact linear algebra.
//!
//! Write `M_n` for the monomials of Adams degree `n` and `I_n` for the degree
//! `n` part of the ideal, spanned by the products `m·r·m'`. Every such product
//! is either `(m·r·m'')·ℓ` for a letter `ℓ` (arrow or central generator) or
//! `p·r` with `p` a monomial; hence
//!
//! ```text
//! I_n = I_{n-1}·arrows + Σ_c I_{n-deg c}·c + M_{n-d}·R.
//! ```
//!
//! So `B_n` is the quotient of the formal space `⊕_ℓ B_{n-deg ℓ} ⊗ ℓ`
//! (the *generators* of degree `n`) by three kinds of rows:
//!
//! * `s·r` for standard monomials `s` of `B_{n-d}` and relations `r`;
//! * `(s·c)⊗ℓ − (s·ℓ)⊗c` identifying the two ways of writing a monomial that
//!   contains a central generator `c`;
//! * nothing else: `I_{n-1}·ℓ` is already zero in `B_{n-1} ⊗ ℓ`.
//!
//! The rank of that system equals the rank of the full relation slice of
//! `M_n`, so the output is the same dimension count, computed on far smaller
//! matrices. Each degree's reduced echelon form doubles as a normal-form table
//! for the next degrees.
//!
//! Right multiplication never changes the source vertex, and every row lives in
//! a single `(source, target)` block, so blocks of one degree are independent
//! work units.

use crate::exec::Execution;
use crate::matrix::IntMatrix;

use super::linalg::{Domain, Echelon, SparseRow};
use super::presentation::GradedPresentation;
use super::{OracleConfig, OracleError};

#[derive(Clone, Copy, Debug)]
enum Letter {
    Arrow { tail: usize, head: usize },
    Central { degree: usize },
}

impl Letter {
    fn degree(self) -> usize {
        match self {
            Letter::Arrow { .. } => 1,
            Letter::Central { degree } => degree,
        }
    }
}

/// One `(degree, source, target)` slice of the quotient.
struct Block<D: Domain> {
    /// `offsets[ℓ]`: first generator column of segment `B_{n-deg ℓ} ⊗ ℓ`.
    offsets: Vec<Option<u32>>,
    echelon: Echelon<D>,
    /// Generator column → standard position (`u32::MAX` for pivots).
    std_pos: Vec<u32>,
    std_count: usize,
}

/// Generator layout of a block, computed before its rows.
struct Layout {
    offsets: Vec<Option<u32>>,
    columns: usize,
}

struct Engine<'p, D: Domain> {
    pres: &'p GradedPresentation,
    domain: D,
    letters: Vec<Letter>,
    /// Letter word of each relation term, with its coefficient.
    relation_words: Vec<Vec<(D::Elem, Vec<usize>)>>,
    r: usize,
    /// `blocks[n][i * r + j]`.
    blocks: Vec<Vec<Block<D>>>,
}

impl<'p, D: Domain> Engine<'p, D> {
    fn new(pres: &'p GradedPresentation, domain: D) -> Self {
        let mut letters: Vec<Letter> = pres
            .arrows()
            .iter()
            .map(|a| Letter::Arrow {
                tail: a.tail,
                head: a.head,
            })
            .collect();
        let arrow_count = letters.len();
        letters.extend(pres.central().iter().map(|c| Letter::Central { degree: c.degree }));
        let relation_words = pres
            .relations()
            .iter()
            .map(|rel| {
                rel.terms
                    .iter()
                    .map(|t| {
                        // canonical word: the path, then central generators in index order
                        let mut word = t.monomial.arrows.clone();
                        for (c, &e) in t.monomial.central.iter().enumerate() {
                            word.extend(std::iter::repeat_n(arrow_count + c, e as usize));
                        }
                        (domain.embed(&t.coeff), word)
                    })
                    .filter(|(c, _)| !domain.is_zero(c))
                    .collect()
            })
            .collect();
        Engine {
            pres,
            domain,
            letters,
            relation_words,
            r: pres.vertex_count(),
            blocks: Vec::new(),
        }
    }

    fn block(&self, n: usize, i: usize, j: usize) -> &Block<D> {
        &self.blocks[n][i * self.r + j]
    }

    fn std_count(&self, n: usize, i: usize, j: usize) -> usize {
        self.block(n, i, j).std_count
    }

    /// Block a letter comes from when it ends at `j`: `(degree offset, target)`.
    fn letter_source(&self, letter: usize, j: usize) -> Option<(usize, usize)> {
        match self.letters[letter] {
            Letter::Arrow { tail, head } => (head == j).then_some((1, tail)),
            Letter::Central { degree } => Some((degree, j)),
        }
    }

    /// Target of `x · letter` when `x` ends at `k`.
    fn letter_target(&self, letter: usize, k: usize) -> Option<usize> {
        match self.letters[letter] {
            Letter::Arrow { tail, head } => (tail == k).then_some(head),
            Letter::Central { .. } => Some(k),
        }
    }

    fn layout(&self, n: usize, i: usize, j: usize) -> Layout {
        let mut offsets = vec![None; self.letters.len()];
        let mut columns = 0usize;
        if n == 0 {
            return Layout {
                offsets,
                columns: usize::from(i == j),
            };
        }
        for (l, off) in offsets.iter_mut().enumerate() {
            if let Some((d, k)) = self.letter_source(l, j) {
                if d <= n {
                    *off = Some(columns as u32);
                    columns += self.std_count(n - d, i, k);
                }
            }
        }
        Layout { offsets, columns }
    }

    /// `x · letter` as a formal combination of generators of the next block.
    fn append_letter(&self, x: &SparseRow<D::Elem>, offsets: &[Option<u32>], letter: usize) -> SparseRow<D::Elem> {
        let base = offsets[letter].expect("letter feeds this block");
        x.iter().map(|(s, v)| (base + s, v.clone())).collect()
    }

    /// Normal form of a generator combination in a finished block, as a pair
    /// `(scale, row over standard positions)` representing `row / scale`.
    fn normal_form(&self, block: &Block<D>, scale: D::Elem, gens: SparseRow<D::Elem>) -> (D::Elem, SparseRow<D::Elem>) {
        let (scale, row) = block.echelon.reduce_scaled(scale, gens);
        let row = row
            .into_iter()
            .map(|(g, v)| {
                let pos = block.std_pos[g as usize];
                debug_assert_ne!(pos, u32::MAX);
                (pos, v)
            })
            .collect();
        (scale, row)
    }

    /// `s · word` for the standard monomial `s` of block `(deg, i, k)`: every
    /// letter but the last is reduced to normal form, the last stays formal in
    /// the generator columns of the target block (described by `offsets`).
    /// Returns `None` if the word is not composable from `k`.
    fn multiply_word(
        &self,
        deg: usize,
        i: usize,
        k: usize,
        s: u32,
        word: &[usize],
        offsets: &[Option<u32>],
    ) -> Option<(D::Elem, SparseRow<D::Elem>)> {
        let (last, init) = word.split_last().expect("relation words are nonempty");
        let mut x: SparseRow<D::Elem> = vec![(s, self.domain.one())];
        let mut scale = self.domain.one();
        let (mut deg, mut at) = (deg, k);
        for &l in init {
            let next = self.letter_target(l, at)?;
            let d = deg + self.letters[l].degree();
            let block = self.block(d, i, next);
            let gens = self.append_letter(&x, &block.offsets, l);
            let (sc, nf) = self.normal_form(block, scale, gens);
            scale = sc;
            x = nf;
            deg = d;
            at = next;
        }
        self.letter_target(*last, at)?;
        Some((scale, self.append_letter(&x, offsets, *last)))
    }

    fn build_block(&self, n: usize, i: usize, j: usize, layout: &Layout, exec: Execution) -> Block<D> {
        let mut echelon = Echelon::new(self.domain.clone(), layout.columns);
        if n > 0 {
            let rows = self.block_rows(n, i, j, &layout.offsets, exec);
            for row in rows {
                echelon.insert(row);
            }
        }
        echelon.finish();
        let mut std_pos = vec![u32::MAX; layout.columns];
        let mut std_count = 0usize;
        for (g, slot) in std_pos.iter_mut().enumerate() {
            if !echelon.is_pivot(g) {
                *slot = std_count as u32;
                std_count += 1;
            }
        }
        Block {
            offsets: layout.offsets.clone(),
            echelon,
            std_pos,
            std_count,
        }
    }

    fn block_rows(&self, n: usize, i: usize, j: usize, offsets: &[Option<u32>], exec: Execution) -> Vec<SparseRow<D::Elem>> {
        enum Task {
            Relation { rel: usize, deg: usize, k: usize, s: u32 },
            Commute { c: usize, l: usize, deg: usize, k: usize, s: u32 },
        }
        let mut tasks = Vec::new();
        for rel in 0..self.relation_words.len() {
            let (d, a, b) = self.pres.relation_shape(rel);
            if b != j || d > n || self.relation_words[rel].is_empty() {
                continue;
            }
            for s in 0..self.std_count(n - d, i, a) {
                tasks.push(Task::Relation {
                    rel,
                    deg: n - d,
                    k: a,
                    s: s as u32,
                });
            }
        }
        let arrow_count = self.pres.arrows().len();
        for c in arrow_count..self.letters.len() {
            let dc = self.letters[c].degree();
            for l in 0..self.letters.len() {
                if l == c || (l >= arrow_count && l < c) {
                    continue;
                }
                let Some((dl, k)) = self.letter_source(l, j) else {
                    continue;
                };
                if dc + dl > n {
                    continue;
                }
                let deg = n - dc - dl;
                for s in 0..self.std_count(deg, i, k) {
                    tasks.push(Task::Commute {
                        c,
                        l,
                        deg,
                        k,
                        s: s as u32,
                    });
                }
            }
        }
        let d = &self.domain;
        let rows = exec.map_indices(tasks.len(), |t| match tasks[t] {
            Task::Relation { rel, deg, k, s } => {
                let terms = self.relation_words[rel]
                    .iter()
                    .map(|(coeff, word)| {
                        let (scale, row) = self
                            .multiply_word(deg, i, k, s, word, offsets)
                            .expect("relation terms are composable");
                        (coeff.clone(), scale, row)
                    })
                    .collect();
                d.combine_scaled(terms)
            }
            Task::Commute { c, l, deg, k, s } => {
                let (s1, r1) = self
                    .multiply_word(deg, i, k, s, &[c, l], offsets)
                    .expect("central letters compose");
                let (s2, r2) = self
                    .multiply_word(deg, i, k, s, &[l, c], offsets)
                    .expect("central letters compose");
                d.combine_scaled(vec![(d.one(), s1, r1), (d.neg(&d.one()), s2, r2)])
            }
        });
        rows.into_iter().filter(|r| !r.is_empty()).collect()
    }

    fn run(&mut self, max_degree: usize, config: &OracleConfig) -> Result<Vec<IntMatrix>, OracleError> {
        let r = self.r;
        let mut out = Vec::with_capacity(max_degree + 1);
        for n in 0..=max_degree {
            let layouts: Vec<Layout> = (0..r * r).map(|t| self.layout(n, t / r, t % r)).collect();
            let count: usize = layouts.iter().map(|l| l.columns).sum();
            if count > config.monomial_cap {
                return Err(OracleError::DegreeOverflow {
                    degree: n,
                    count,
                    cap: config.monomial_cap,
                });
            }
            let exec = config.execution;
            let this = &*self;
            let blocks = exec.map_indices(r * r, |t| this.build_block(n, t / r, t % r, &layouts[t], exec));
            let mut m = IntMatrix::zero(r);
            for (t, b) in blocks.iter().enumerate() {
                m.set(t / r, t % r, b.std_count as i64);
            }
            out.push(m);
            self.blocks.push(blocks);
        }
        Ok(out)
    }
}

pub(super) fn quotient_dims<D: Domain>(
    pres: &GradedPresentation,
    domain: D,
    max_degree: usize,
    config: &OracleConfig,
) -> Result<Vec<IntMatrix>, OracleError> {
    Engine::new(pres, domain).run(max_degree, config)
}
