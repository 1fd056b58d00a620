//! Graded presentations `k[z_1, ...] Q̄ / (relations)` and the three concrete
//! presentations used for preprojective algebras and quiver Heisenberg
//! algebras.
//!
//! Paths compose left to right: `αβ` traverses `α` first, so a path from `i`
//! to `j` lies in `e_i (-) e_j` and contributes to entry `(i, j)` of a
//! dimension matrix.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::field::{Field, WeightVector};
use crate::quiver::{DoubleArrow, Quiver};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("weight vector is not sincere (entry {vertex} vanishes)")]
    NotSincere { vertex: usize },
    #[error("this presentation needs a weight vector")]
    MissingWeight,
    #[error("weight vector is over {weight} but the presentation is over {presentation}")]
    FieldMismatch { weight: Field, presentation: Field },
    #[error("weight vector has {got} entries, quiver has {expected} vertices")]
    WeightLength { expected: usize, got: usize },
    #[error("relation {index} is not homogeneous: terms of Adams degree {first} and {other}")]
    InhomogeneousRelation { index: usize, first: usize, other: usize },
    #[error("relation {index}: {reason}")]
    MalformedRelation { index: usize, reason: String },
}

/// Monomial `z^e · path`: central exponents and a composable path of double
/// arrows starting at `source`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub source: usize,
    pub arrows: Vec<usize>,
    pub central: Vec<u32>,
}

impl Monomial {
    pub fn idempotent(vertex: usize, central_count: usize) -> Self {
        Monomial {
            source: vertex,
            arrows: Vec::new(),
            central: vec![0; central_count],
        }
    }

    pub fn path(source: usize, arrows: Vec<usize>, central_count: usize) -> Self {
        Monomial {
            source,
            arrows,
            central: vec![0; central_count],
        }
    }

    pub fn with_central(mut self, index: usize, exponent: u32) -> Self {
        self.central[index] += exponent;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcTerm {
    pub coeff: BigInt,
    pub monomial: Monomial,
}

/// A formal integer combination of monomials, read in the presentation's field.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NcElement {
    pub terms: Vec<NcTerm>,
}

impl NcElement {
    pub fn new() -> Self {
        NcElement { terms: Vec::new() }
    }

    pub fn push(&mut self, coeff: impl Into<BigInt>, monomial: Monomial) {
        let coeff = coeff.into();
        if coeff.is_zero() {
            return;
        }
        if let Some(t) = self.terms.iter_mut().find(|t| t.monomial == monomial) {
            t.coeff += coeff;
        } else {
            self.terms.push(NcTerm { coeff, monomial });
        }
        self.terms.retain(|t| !t.coeff.is_zero());
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `a · self` for a path `a` ending where every term starts.
    pub fn left_mul_path(&self, path: &[usize], source: usize) -> NcElement {
        let mut out = NcElement::new();
        for t in &self.terms {
            let mut arrows = path.to_vec();
            arrows.extend(&t.monomial.arrows);
            out.push(
                t.coeff.clone(),
                Monomial {
                    source,
                    arrows,
                    central: t.monomial.central.clone(),
                },
            );
        }
        out
    }

    /// `self · a` for a path `a`.
    pub fn right_mul_path(&self, path: &[usize]) -> NcElement {
        let mut out = NcElement::new();
        for t in &self.terms {
            let mut m = t.monomial.clone();
            m.arrows.extend(path);
            out.push(t.coeff.clone(), m);
        }
        out
    }

    pub fn add_scaled(&mut self, coeff: &BigInt, other: &NcElement) {
        for t in &other.terms {
            self.push(coeff * &t.coeff, t.monomial.clone());
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralGenerator {
    pub name: String,
    pub degree: usize,
}

/// Which of the standard presentations to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PresentationKind {
    /// `k Q̄ / (ρ_i | i ∈ Q_0)`.
    PreprojectivePerVertex,
    /// `k[z] Q̄ / (ρ_i − v_i z e_i)`, `deg z = 2`.
    QhaZ,
    /// `k Q̄ / (η_a | a ∈ Q̄_1)` with `η_a = aϱ − ϱa`, `ϱ = Σ v_i^{-1} ρ_i`.
    QhaEta,
}

/// A homogeneous presentation of a graded quotient of `k[central] Q̄`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPresentation {
    vertex_count: usize,
    arrows: Vec<DoubleArrow>,
    central: Vec<CentralGenerator>,
    relations: Vec<NcElement>,
    /// Adams degree, source and target of each relation.
    shapes: Vec<(usize, usize, usize)>,
    field: Field,
}

impl GradedPresentation {
    /// Validates homogeneity and endpoint consistency. Zero relations are dropped.
    pub fn new(
        vertex_count: usize,
        arrows: Vec<DoubleArrow>,
        central: Vec<CentralGenerator>,
        relations: Vec<NcElement>,
        field: Field,
    ) -> Result<Self, PresentationError> {
        let relations: Vec<NcElement> = relations.into_iter().filter(|r| !r.is_zero()).collect();
        let mut shapes = Vec::with_capacity(relations.len());
        for (index, rel) in relations.iter().enumerate() {
            let malformed = |reason: String| PresentationError::MalformedRelation { index, reason };
            let mut shape: Option<(usize, usize, usize)> = None;
            for t in &rel.terms {
                let m = &t.monomial;
                if m.central.len() != central.len() {
                    return Err(malformed("central exponent count mismatch".into()));
                }
                if m.source >= vertex_count {
                    return Err(malformed(format!("vertex {} out of range", m.source + 1)));
                }
                let mut at = m.source;
                for &a in &m.arrows {
                    let arrow = arrows.get(a).ok_or_else(|| malformed(format!("unknown arrow {a}")))?;
                    if arrow.tail != at {
                        return Err(malformed(format!("path is not composable at `{}`", arrow.name)));
                    }
                    at = arrow.head;
                }
                let degree = m.arrows.len()
                    + m.central
                        .iter()
                        .zip(&central)
                        .map(|(&e, c)| e as usize * c.degree)
                        .sum::<usize>();
                match shape {
                    None => shape = Some((degree, m.source, at)),
                    Some((d, s, t)) => {
                        if d != degree {
                            return Err(PresentationError::InhomogeneousRelation {
                                index,
                                first: d,
                                other: degree,
                            });
                        }
                        if (s, t) != (m.source, at) {
                            return Err(malformed("terms have different endpoints".into()));
                        }
                    }
                }
            }
            let shape = shape.expect("nonzero relation has a term");
            if shape.0 == 0 {
                return Err(malformed("relation of Adams degree 0".into()));
            }
            shapes.push(shape);
        }
        if central.iter().any(|c| c.degree == 0) {
            return Err(PresentationError::MalformedRelation {
                index: 0,
                reason: "central generators need positive Adams degree".into(),
            });
        }
        Ok(GradedPresentation {
            vertex_count,
            arrows,
            central,
            relations,
            shapes,
            field,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[DoubleArrow] {
        &self.arrows
    }

    pub fn central(&self) -> &[CentralGenerator] {
        &self.central
    }

    pub fn relations(&self) -> &[NcElement] {
        &self.relations
    }

    /// `(Adams degree, source, target)` of relation `index`.
    pub fn relation_shape(&self, index: usize) -> (usize, usize, usize) {
        self.shapes[index]
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Same presentation read over another field.
    pub fn over(&self, field: Field) -> Self {
        GradedPresentation {
            field,
            ..self.clone()
        }
    }

    /// Human-readable relation, e.g. `a a* - z e1`.
    pub fn format_relation(&self, index: usize) -> String {
        let rel = &self.relations[index];
        let mut s = String::new();
        for (k, t) in rel.terms.iter().enumerate() {
            let neg = t.coeff < BigInt::zero();
            let mag = if neg { -&t.coeff } else { t.coeff.clone() };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() {
                factors.push(mag.to_string());
            }
            for (c, &e) in self.central.iter().zip(&t.monomial.central) {
                match e {
                    0 => {}
                    1 => factors.push(c.name.clone()),
                    e => factors.push(format!("{}^{e}", c.name)),
                }
            }
            if t.monomial.arrows.is_empty() {
                factors.push(format!("e{}", t.monomial.source + 1));
            } else {
                factors.extend(t.monomial.arrows.iter().map(|&a| self.arrows[a].name.clone()));
            }
            s.push_str(&factors.join(" "));
        }
        s
    }
}

/// Mesh relation `ρ_i = Σ_{t(α)=i} α α* − Σ_{h(α)=i} α* α` at each vertex.
pub fn mesh_relations(q: &Quiver, central_count: usize) -> Vec<NcElement> {
    let double = q.double();
    let mut rho = vec![NcElement::new(); q.vertex_count()];
    for (k, a) in q.arrows().iter().enumerate() {
        let (alpha, star) = (2 * k, 2 * k + 1);
        debug_assert_eq!(double[star].partner, alpha);
        rho[a.tail].push(1, Monomial::path(a.tail, vec![alpha, star], central_count));
        rho[a.head].push(-1, Monomial::path(a.head, vec![star, alpha], central_count));
    }
    rho
}

fn check_weight(q: &Quiver, v: &WeightVector, field: Field) -> Result<(), PresentationError> {
    if v.field() != field {
        return Err(PresentationError::FieldMismatch {
            weight: v.field(),
            presentation: field,
        });
    }
    if v.len() != q.vertex_count() {
        return Err(PresentationError::WeightLength {
            expected: q.vertex_count(),
            got: v.len(),
        });
    }
    Ok(())
}

/// Builds one of the standard presentations over `field`.
///
/// Coefficients are kept integral: relations that would involve fractions of
/// the weights are multiplied through by their denominators, which does not
/// change the ideal.
pub fn build_presentation(
    kind: PresentationKind,
    q: &Quiver,
    field: Field,
    v: Option<&WeightVector>,
) -> Result<GradedPresentation, PresentationError> {
    let r = q.vertex_count();
    match kind {
        PresentationKind::PreprojectivePerVertex => {
            GradedPresentation::new(r, q.double(), Vec::new(), mesh_relations(q, 0), field)
        }
        PresentationKind::QhaZ => {
            let v = v.ok_or(PresentationError::MissingWeight)?;
            check_weight(q, v, field)?;
            let rho = mesh_relations(q, 1);
            let relations = rho
                .into_iter()
                .enumerate()
                .map(|(i, rho_i)| {
                    // b ρ_i − a z e_i for v_i = a / b
                    let (a, b) = v.as_fraction(i);
                    let mut rel = NcElement::new();
                    rel.add_scaled(&b, &rho_i);
                    rel.push(-a, Monomial::idempotent(i, 1).with_central(0, 1));
                    rel
                })
                .collect();
            let z = CentralGenerator {
                name: "z".into(),
                degree: 2,
            };
            GradedPresentation::new(r, q.double(), vec![z], relations, field)
        }
        PresentationKind::QhaEta => {
            let v = v.ok_or(PresentationError::MissingWeight)?;
            check_weight(q, v, field)?;
            if let Some(i) = (0..r).find(|&i| v.is_zero_at(i)) {
                return Err(PresentationError::NotSincere { vertex: i + 1 });
            }
            let rho = mesh_relations(q, 0);
            let double = q.double();
            let mut relations = Vec::with_capacity(double.len());
            for (idx, arrow) in double.iter().enumerate() {
                // η_a · v_i v_j = v_i a ρ_j − v_j ρ_i a   for a: i → j,
                // then cleared of the denominators b_i b_j.
                let (i, j) = (arrow.tail, arrow.head);
                let (ai, bi) = v.as_fraction(i);
                let (aj, bj) = v.as_fraction(j);
                let left = rho[j].left_mul_path(&[idx], i);
                let right = rho[i].right_mul_path(&[idx]);
                let mut rel = NcElement::new();
                rel.add_scaled(&(&ai * &bj), &left);
                rel.add_scaled(&-(&aj * &bi), &right);
                relations.push(rel);
            }
            GradedPresentation::new(r, double, Vec::new(), relations, field)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Quiver {
        Quiver::from_edges(2, &[("a", 1, 2)]).unwrap()
    }

    #[test]
    fn preprojective_a2_relations() {
        let p = build_presentation(PresentationKind::PreprojectivePerVertex, &a2(), Field::Rational, None)
            .unwrap();
        let rels: Vec<String> = (0..p.relations().len()).map(|i| p.format_relation(i)).collect();
        assert_eq!(rels, vec!["a a*", "-a* a"]);
        assert_eq!(p.relation_shape(0), (2, 0, 0));
        assert_eq!(p.relation_shape(1), (2, 1, 1));
    }

    #[test]
    fn qha_z_a2_relations() {
        let v = WeightVector::from_integers(Field::Rational, &[1, 1]);
        let p = build_presentation(PresentationKind::QhaZ, &a2(), Field::Rational, Some(&v)).unwrap();
        let rels: Vec<String> = (0..p.relations().len()).map(|i| p.format_relation(i)).collect();
        assert_eq!(rels, vec!["a a* - z e1", "-a* a - z e2"]);
    }

    #[test]
    fn qha_z_clears_fractions() {
        let v = WeightVector::parse("1/2,3", Field::Rational, 2).unwrap();
        let p = build_presentation(PresentationKind::QhaZ, &a2(), Field::Rational, Some(&v)).unwrap();
        assert_eq!(p.format_relation(0), "2 a a* - z e1");
    }

    #[test]
    fn qha_eta_requires_sincere_weights() {
        let v = WeightVector::from_integers(Field::Rational, &[1, 0]);
        assert_eq!(
            build_presentation(PresentationKind::QhaEta, &a2(), Field::Rational, Some(&v)),
            Err(PresentationError::NotSincere { vertex: 2 })
        );
        assert_eq!(
            build_presentation(PresentationKind::QhaZ, &a2(), Field::Rational, None),
            Err(PresentationError::MissingWeight)
        );
        let v = WeightVector::from_integers(Field::Prime(3), &[1, 1]);
        assert!(matches!(
            build_presentation(PresentationKind::QhaZ, &a2(), Field::Rational, Some(&v)),
            Err(PresentationError::FieldMismatch { .. })
        ));
    }

    #[test]
    fn qha_eta_a2_relations() {
        let v = WeightVector::from_integers(Field::Rational, &[1, 2]);
        let p = build_presentation(PresentationKind::QhaEta, &a2(), Field::Rational, Some(&v)).unwrap();
        // a: 1→2:  v_1 a ρ_2 − v_2 ρ_1 a = −a a* a − 2 a a* a
        assert_eq!(p.format_relation(0), "-3 a a* a");
        assert_eq!(p.relation_shape(0), (3, 0, 1));
        assert_eq!(p.relations().len(), 2);
    }

    #[test]
    fn empty_relations_dropped_for_a1() {
        let a1 = Quiver::from_edges(1, &[]).unwrap();
        let p = build_presentation(PresentationKind::PreprojectivePerVertex, &a1, Field::Rational, None)
            .unwrap();
        assert!(p.relations().is_empty());
    }

    #[test]
    fn inhomogeneous_rejected() {
        let q = a2();
        let mut rel = NcElement::new();
        rel.push(1, Monomial::path(0, vec![0, 1], 0));
        rel.push(1, Monomial::idempotent(0, 0));
        assert!(matches!(
            GradedPresentation::new(2, q.double(), vec![], vec![rel], Field::Rational),
            Err(PresentationError::InhomogeneousRelation { .. })
        ));
        let mut rel = NcElement::new();
        rel.push(1, Monomial::path(0, vec![1], 0));
        assert!(matches!(
            GradedPresentation::new(2, q.double(), vec![], vec![rel], Field::Rational),
            Err(PresentationError::MalformedRelation { .. })
        ));
    }
}
