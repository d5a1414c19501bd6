//! Text form of algebra elements: terms `(coef) * H[word] * e[weight]`
//! joined by ` + `, with 1-based word letters and `0` for the empty sum.

use super::hecke::{AffineHeckeElement, HeckeElement, LatticeElement};
use super::laurent::LaurentScalar;
use crate::cartan::{Weight, WeylElement, WeylGroup};
use crate::error::{Error, Result};

fn word_text(g: &WeylGroup, w: WeylElement) -> String {
    let letters: Vec<String> = g.word(w).iter().map(|i| (i + 1).to_string()).collect();
    format!("H[{}]", letters.join(","))
}

fn weight_text(l: &Weight) -> String {
    let parts: Vec<String> = l.0.iter().map(|c| c.to_string()).collect();
    format!("e[{}]", parts.join(","))
}

fn join(terms: Vec<String>) -> String {
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

pub fn format_hecke(g: &WeylGroup, a: &HeckeElement) -> String {
    join(a.iter().map(|(&w, c)| format!("({c}) * {}", word_text(g, w))).collect())
}

pub fn format_affine(g: &WeylGroup, a: &AffineHeckeElement) -> String {
    join(a.iter().map(|((w, l), c)| format!("({c}) * {} * {}", word_text(g, *w), weight_text(l))).collect())
}

pub fn format_lattice(a: &LatticeElement) -> String {
    join(a.iter().map(|(l, c)| format!("({c}) * {}", weight_text(l))).collect())
}

/// Splits at ` + ` outside parentheses and brackets.
fn split_terms(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let b = s.as_bytes();
    let mut i = 0;
    while i < b.len() {
        match b[i] {
            b'(' | b'[' => depth += 1,
            b')' | b']' => depth -= 1,
            b'+' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
        i += 1;
    }
    out.push(s[start..].trim());
    out
}

struct Term {
    coef: LaurentScalar,
    word: Option<Vec<usize>>,
    weight: Option<Weight>,
}

fn bracket_list(s: &str, prefix: &str) -> Result<Vec<i64>> {
    let err = || Error::Parse(format!("bad factor `{s}`"));
    let inner = s.strip_prefix(prefix).and_then(|r| r.strip_suffix(']')).ok_or_else(err)?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(|x| x.trim().parse().map_err(|_| err())).collect()
}

fn parse_terms(s: &str) -> Result<Vec<Term>> {
    let s = s.trim();
    if s == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for t in split_terms(s) {
        let err = || Error::Parse(format!("bad term `{t}`"));
        let mut factors = t.split('*').map(str::trim);
        let c = factors.next().ok_or_else(err)?;
        let c = c.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(err)?;
        let mut term = Term { coef: c.parse()?, word: None, weight: None };
        for f in factors {
            if f.starts_with("H[") && term.word.is_none() && term.weight.is_none() {
                let w = bracket_list(f, "H[")?;
                if w.iter().any(|&i| i < 1) {
                    return Err(err());
                }
                term.word = Some(w.into_iter().map(|i| i as usize - 1).collect());
            } else if f.starts_with("e[") && term.weight.is_none() {
                term.weight = Some(Weight(bracket_list(f, "e[")?));
            } else {
                return Err(err());
            }
        }
        out.push(term);
    }
    Ok(out)
}

pub fn parse_hecke(g: &WeylGroup, s: &str) -> Result<HeckeElement> {
    let mut out = HeckeElement::zero();
    for t in parse_terms(s)? {
        if t.weight.is_some() {
            return Err(Error::Parse("lattice factor in a finite Hecke element".into()));
        }
        let w = g.from_reduced_word(&t.word.unwrap_or_default())?;
        out.add_term(w, t.coef);
    }
    Ok(out)
}

pub fn parse_affine(g: &WeylGroup, s: &str) -> Result<AffineHeckeElement> {
    let n = g.datum().lattice_rank();
    let mut out = AffineHeckeElement::zero();
    for t in parse_terms(s)? {
        let w = g.from_reduced_word(&t.word.unwrap_or_default())?;
        let l = t.weight.unwrap_or_else(|| Weight::zero(n));
        g.datum().check_weight(&l)?;
        out.add_term((w, l), t.coef);
    }
    Ok(out)
}

pub fn parse_lattice(s: &str) -> Result<LatticeElement> {
    let mut out = LatticeElement::zero();
    for t in parse_terms(s)? {
        if t.word.is_some() {
            return Err(Error::Parse("Hecke factor in a lattice element".into()));
        }
        out.add_term(t.weight.ok_or_else(|| Error::Parse("missing e[...]".into()))?, t.coef);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AffineHeckeAlgebra, HeckeAlgebra};
    use crate::cartan::{CartanDatum, FiniteType};
    use proptest::prelude::*;
    use std::sync::Arc;

    fn a2() -> Arc<WeylGroup> {
        WeylGroup::new(Arc::new(CartanDatum::abstract_type(FiniteType::A, 2).unwrap())).unwrap()
    }

    #[test]
    fn examples() {
        let g = a2();
        let h = HeckeAlgebra::generic(g.clone());
        let x = h.x_gamma(crate::cartan::Subset::from_indices([0]));
        let s = format_hecke(&g, &x);
        assert_eq!(s, "(-q^-1) * H[] + (1) * H[1]");
        assert_eq!(parse_hecke(&g, &s).unwrap(), x);
        assert_eq!(parse_hecke(&g, "0").unwrap(), HeckeElement::zero());
        assert!(parse_hecke(&g, "(1) * H[1,1]").is_err());
        assert!(parse_hecke(&g, "(1) * H[3]").is_err());
        assert!(parse_lattice("(q) * e[1,2] * e[0,0]").is_err());
    }

    fn arb_affine() -> impl Strategy<Value = Vec<(usize, i64, i64, i64, i32)>> {
        prop::collection::vec((0usize..6, -3i64..=3, -3i64..=3, -4i64..=4, -3i32..=3), 0..6)
    }

    proptest! {
        #[test]
        fn affine_round_trip(terms in arb_affine()) {
            let g = a2();
            let aff = AffineHeckeAlgebra::new(HeckeAlgebra::generic(g.clone())).unwrap();
            let mut x = AffineHeckeElement::zero();
            for (w, a, b, c, k) in terms {
                x.add_term((crate::cartan::WeylElement(w as u32), Weight(vec![a, b])), LaurentScalar::monomial(c, k));
            }
            // Products exercise longer coefficients.
            let y = aff.mul(&x, &x);
            for z in [x, y] {
                let s = format_affine(&g, &z);
                prop_assert_eq!(parse_affine(&g, &s).unwrap(), z);
            }
        }
    }
}
