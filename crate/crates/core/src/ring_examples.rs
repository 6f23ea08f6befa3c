//! Worked instances where the Dedekind equalities fail or hold.
//!
//! Four families of monomial ideals in `k[x, y]` and `k[x, y, z]` where the
//! two sides of an equality are comparable but different, and the ring
//! `Z/2 × Z/2` whose four ideals satisfy both equalities for every family.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exponent::ExponentVector;
use crate::ideal::{big_g, big_l, product_all, MonomialIdeal};
use crate::notation::{format_monomial, parse_ideal};

/// How the left side compares with the right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Equal,
    StrictSubset,
    StrictSuperset,
    Incomparable,
}

pub fn relation(left: &MonomialIdeal, right: &MonomialIdeal) -> Result<Relation> {
    let le = right.contains(left)?;
    let ge = left.contains(right)?;
    Ok(match (le, ge) {
        (true, true) => Relation::Equal,
        (true, false) => Relation::StrictSubset,
        (false, true) => Relation::StrictSuperset,
        (false, false) => Relation::Incomparable,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleOutcome {
    pub index: usize,
    pub ideals: Vec<String>,
    pub left_label: String,
    pub right_label: String,
    pub left: String,
    pub right: String,
    /// Closed form the left side must equal.
    pub left_expected: String,
    pub right_expected: String,
    pub expected: Relation,
    pub observed: Relation,
    /// Monomial in the larger side but not the smaller.
    pub witness: Option<String>,
    pub witness_searched: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductOfFieldsCheck {
    pub max_family_size: usize,
    pub families_checked: usize,
    pub star_holds: bool,
    pub doublestar_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExamplesReport {
    pub examples: Vec<ExampleOutcome>,
    pub product_of_fields: ProductOfFieldsCheck,
    pub passed: bool,
}

/// Smallest monomial (by degree, then lexicographically) in `big` but not in
/// `small`, searching up to the largest generator degree of either side.
pub fn search_witness(big: &MonomialIdeal, small: &MonomialIdeal) -> Result<Option<ExponentVector>> {
    let n = big.n_vars();
    let max_degree = big.max_generator_degree().max(small.max_generator_degree()) as u32;
    for d in 0..=max_degree {
        for m in monomials_of_degree(n, d) {
            if big.contains_monomial(&m)? && !small.contains_monomial(&m)? {
                return Ok(Some(m));
            }
        }
    }
    Ok(None)
}

/// All exponent vectors of degree `d` in lexicographic order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<ExponentVector> {
    fn rec(n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
        if prefix.len() + 1 == n {
            prefix.push(left);
            out.push(ExponentVector::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for c in 0..=left {
            prefix.push(c);
            rec(n, left - c, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, d, &mut Vec::new(), &mut out);
    }
    out
}

fn parse_all(texts: &[&str], n: usize) -> Result<Vec<MonomialIdeal>> {
    texts.iter().map(|t| parse_ideal(t, n)).collect()
}

fn product_of(texts: &[&str], n: usize) -> Result<MonomialIdeal> {
    product_all(n, &parse_all(texts, n)?)
}

type Side = (&'static str, fn(&[MonomialIdeal]) -> Result<MonomialIdeal>);

struct Case {
    ideals: &'static [&'static str],
    n_vars: usize,
    left: Side,
    right: Side,
    left_expected: Vec<&'static str>,
    right_expected: Vec<&'static str>,
    expected: Relation,
    given_witness: Option<&'static str>,
}

fn l2_g2(a: &[MonomialIdeal]) -> Result<MonomialIdeal> {
    big_l(2, a)?.product(&big_g(2, a)?)
}
fn g1(a: &[MonomialIdeal]) -> Result<MonomialIdeal> {
    big_g(1, a)
}
fn g3_l2(a: &[MonomialIdeal]) -> Result<MonomialIdeal> {
    big_g(3, a)?.product(&big_l(2, a)?)
}
fn l1_l3(a: &[MonomialIdeal]) -> Result<MonomialIdeal> {
    big_l(1, a)?.product(&big_l(3, a)?)
}
fn l3_g2(a: &[MonomialIdeal]) -> Result<MonomialIdeal> {
    big_l(3, a)?.product(&big_g(2, a)?)
}
fn g1_g3(a: &[MonomialIdeal]) -> Result<MonomialIdeal> {
    big_g(1, a)?.product(&big_g(3, a)?)
}

fn cases() -> Vec<Case> {
    vec![
        Case {
            ideals: &["<x^2*y>", "<x*y^2>"],
            n_vars: 2,
            left: ("L(2)G(2)", l2_g2),
            right: ("G(1)", g1),
            left_expected: vec!["<x^4*y^3, x^3*y^4>"],
            right_expected: vec!["<x^3*y^3>"],
            expected: Relation::StrictSubset,
            given_witness: None,
        },
        Case {
            ideals: &["<x>", "<y>", "<z>"],
            n_vars: 3,
            left: ("G(3)L(2)", g3_l2),
            right: ("L(1)L(3)", l1_l3),
            left_expected: vec!["<x, y, z>", "<x*y*z>", "<x*y*z>"],
            right_expected: vec!["<x*y*z>", "<x*y*z>"],
            expected: Relation::StrictSubset,
            given_witness: None,
        },
        Case {
            ideals: &["<x, y>", "<y, z>", "<z, x>"],
            n_vars: 3,
            left: ("G(3)L(2)", g3_l2),
            right: ("L(1)L(3)", l1_l3),
            left_expected: vec!["<x, y, z>", "<x, y*z>", "<y, z*x>", "<z, x*y>"],
            right_expected: vec!["<x, y>", "<y, z>", "<z, x>", "<x*y, y*z, z*x>"],
            expected: Relation::StrictSuperset,
            given_witness: Some("x^2*y*z"),
        },
        Case {
            ideals: &["<x^2*y*z>", "<x*y^2*z>", "<x*y*z^2>"],
            n_vars: 3,
            left: ("L(3)G(2)", l3_g2),
            right: ("G(1)G(3)", g1_g3),
            left_expected: vec![
                "<x*y*z>", "<x*y*z>", "<x*y*z>", "<x*y*z>", "<x*y*z>", "<x, y>", "<y, z>",
                "<z, x>",
            ],
            right_expected: vec!["<x*y*z>", "<x*y*z>", "<x*y*z>", "<x*y*z>", "<x*y*z>", "<x, y, z>"],
            expected: Relation::StrictSubset,
            given_witness: None,
        },
    ]
}

fn run_case(index: usize, case: &Case) -> Result<ExampleOutcome> {
    let n = case.n_vars;
    let ideals = parse_all(case.ideals, n)?;
    let left = (case.left.1)(&ideals)?;
    let right = (case.right.1)(&ideals)?;
    let left_expected = product_of(&case.left_expected, n)?;
    let right_expected = product_of(&case.right_expected, n)?;
    let observed = relation(&left, &right)?;
    let (big, small) = match observed {
        Relation::StrictSubset => (&right, &left),
        _ => (&left, &right),
    };
    let (witness, searched) = match case.given_witness {
        Some(text) => {
            let m = parse_ideal(&format!("<{text}>"), n)?.generators()[0].clone();
            let valid = big.contains_monomial(&m)? && !small.contains_monomial(&m)?;
            (valid.then_some(m), false)
        }
        None => (search_witness(big, small)?, true),
    };
    let passed = observed == case.expected
        && left == left_expected
        && right == right_expected
        && witness.is_some();
    Ok(ExampleOutcome {
        index,
        ideals: case.ideals.iter().map(|s| s.to_string()).collect(),
        left_label: case.left.0.to_string(),
        right_label: case.right.0.to_string(),
        left: left.to_string(),
        right: right.to_string(),
        left_expected: left_expected.to_string(),
        right_expected: right_expected.to_string(),
        expected: case.expected,
        observed,
        witness: witness.as_ref().map(format_monomial),
        witness_searched: searched,
        passed,
    })
}

/// Rebuilds the four polynomial-ring instances plus the `Z/2 × Z/2` check.
pub fn run_ring_examples() -> Result<ExamplesReport> {
    let examples = cases()
        .iter()
        .enumerate()
        .map(|(i, c)| run_case(i + 1, c))
        .collect::<Result<Vec<_>>>()?;
    let product_of_fields = check_product_of_two_fields(4);
    let passed = examples.iter().all(|e| e.passed)
        && product_of_fields.star_holds
        && product_of_fields.doublestar_holds;
    Ok(ExamplesReport {
        examples,
        product_of_fields,
        passed,
    })
}

/// An ideal of `Z/2 × Z/2`: bit `j` set iff the `j`-th factor is the whole field.
/// Sums are unions, and both products and intersections are componentwise
/// intersections of `{0, F}`.
type SplitIdeal = u8;
const WHOLE: SplitIdeal = 0b11;

fn split_g(k: usize, fam: &[SplitIdeal]) -> SplitIdeal {
    crate::combinatorics::k_subsets(fam.len(), k)
        .expect("k in range")
        .iter()
        .map(|s| s.positions().fold(0, |acc, p| acc | fam[p]))
        .fold(WHOLE, |acc, v| acc & v)
}

fn split_l(k: usize, fam: &[SplitIdeal]) -> SplitIdeal {
    crate::combinatorics::k_subsets(fam.len(), k)
        .expect("k in range")
        .iter()
        .map(|s| s.positions().fold(WHOLE, |acc, p| acc & fam[p]))
        .fold(WHOLE, |acc, v| acc & v)
}

/// Exhausts every family of `1..=max_n` ideals of `Z/2 × Z/2`.
pub fn check_product_of_two_fields(max_n: usize) -> ProductOfFieldsCheck {
    let mut star_holds = true;
    let mut doublestar_holds = true;
    let mut families = 0;
    for n in 1..=max_n {
        for code in 0..4usize.pow(n as u32) {
            let fam: Vec<SplitIdeal> = (0..n).map(|i| ((code >> (2 * i)) & 3) as u8).collect();
            families += 1;
            let mut star = (split_g(n, &fam), WHOLE);
            let mut dstar = (split_l(n, &fam), WHOLE);
            for k in 1..=n {
                let (g, l) = (split_g(k, &fam), split_l(k, &fam));
                if k % 2 == 0 {
                    star.0 &= l;
                    dstar.0 &= g;
                } else {
                    star.1 &= l;
                    dstar.1 &= g;
                }
            }
            star_holds &= star.0 == star.1;
            doublestar_holds &= dstar.0 == dstar.1;
        }
    }
    ProductOfFieldsCheck {
        max_family_size: max_n,
        families_checked: families,
        star_holds,
        doublestar_holds,
    }
}

impl ExamplesReport {
    pub fn failing(&self) -> Option<usize> {
        self.examples.iter().find(|e| !e.passed).map(|e| e.index)
    }
}
