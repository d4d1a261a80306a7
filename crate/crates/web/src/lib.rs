//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export takes the group name (`"suzuki"` or `"ree"`) and the field
//! order and returns plain text for display.

use std::fmt::Write as _;

use twisted_sylow::{Error, Matrix, Ree, SquareClass, Suzuki, SylowFactorization, TwistedGroup};
use wasm_bindgen::prelude::*;

/// A uniformly random element with its normal form and four factors.
#[wasm_bindgen]
pub fn factor_random(group: &str, q: u64, seed: u64) -> Result<String, JsError> {
    Ok(factor_random_text(group, q, seed)?)
}

/// Factors a matrix given in the text format, one row per line.
#[wasm_bindgen]
pub fn factor_matrix(group: &str, q: u64, text: &str) -> Result<String, JsError> {
    Ok(factor_matrix_text(group, q, text)?)
}

/// Both sides of the weyl-cell and torus-cell identities at one parameter:
/// ε for Suzuki, λ with ε = ±λ² for Ree.
#[wasm_bindgen]
pub fn cell_identities(group: &str, q: u64, param: u64) -> Result<String, JsError> {
    Ok(cell_identities_text(group, q, param)?)
}

pub fn factor_random_text(group: &str, q: u64, seed: u64) -> Result<String, Error> {
    match group {
        "suzuki" => {
            let g = Suzuki::with_order(q)?;
            describe(&g, &TwistedGroup::random_element(&g, seed))
        }
        "ree" => {
            let g = Ree::with_order(q)?;
            describe(&g, &TwistedGroup::random_element(&g, seed))
        }
        _ => Err(unknown(group)),
    }
}

pub fn factor_matrix_text(group: &str, q: u64, text: &str) -> Result<String, Error> {
    match group {
        "suzuki" => {
            let g = Suzuki::with_order(q)?;
            describe(&g, &Matrix::parse(g.field(), Suzuki::DIM, text)?)
        }
        "ree" => {
            let g = Ree::with_order(q)?;
            describe(&g, &Matrix::parse(TwistedGroup::field(&g), Ree::DIM, text)?)
        }
        _ => Err(unknown(group)),
    }
}

pub fn cell_identities_text(group: &str, q: u64, param: u64) -> Result<String, Error> {
    let mut out = String::new();
    match group {
        "suzuki" => {
            let g = Suzuki::with_order(q)?;
            let eps = g.field().from_int(param)?;
            pair(&mut out, "weyl cell", g.weyl_cell_identity(eps)?);
            pair(&mut out, "torus cell", g.torus_cell_identity(eps)?);
        }
        "ree" => {
            let g = Ree::with_order(q)?;
            let lambda = g.chevalley().field().from_int(param)?;
            for (class, name) in [
                (SquareClass::Square, "eps = lambda^2"),
                (SquareClass::MinusSquare, "eps = -lambda^2"),
            ] {
                pair(
                    &mut out,
                    &format!("weyl cell, {name}"),
                    g.weyl_cell_identity(lambda, class)?,
                );
                pair(
                    &mut out,
                    &format!("torus cell, {name}"),
                    g.torus_cell_identity(lambda, class)?,
                );
            }
        }
        _ => return Err(unknown(group)),
    }
    Ok(out)
}

fn unknown(group: &str) -> Error {
    Error::Parse(format!("unknown group {group:?}"))
}

fn describe<G: TwistedGroup>(g: &G, m: &Matrix) -> Result<String, Error> {
    let form = g.bruhat(m)?;
    let fac = g.factor(m)?;
    let mut out = String::new();
    let _ = writeln!(out, "element\n{}", m.to_text());
    let _ = writeln!(out, "normal form: {}\n", g.describe_form(&form));
    for (tag, factor) in SylowFactorization::TAGS.iter().zip(&fac.factors) {
        let _ = writeln!(out, "{tag}\n{}", factor.to_text());
    }
    let ok = g.check_factorization(m, &fac);
    let _ = writeln!(out, "{}", if ok { "PRODUCT OK" } else { "PRODUCT FAILED" });
    Ok(out)
}

fn pair(out: &mut String, title: &str, (lhs, rhs): (Matrix, Matrix)) {
    let verdict = if lhs == rhs { "equal" } else { "DIFFERENT" };
    let _ = writeln!(
        out,
        "{title}: {verdict}\nleft\n{}right\n{}",
        lhs.to_text(),
        rhs.to_text()
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_factorizations() {
        for (group, q) in [("suzuki", 8), ("suzuki", 128), ("ree", 3), ("ree", 27)] {
            let text = factor_random_text(group, q, 9).unwrap();
            assert!(text.ends_with("PRODUCT OK\n"), "{text}");
            assert_eq!(text, factor_random_text(group, q, 9).unwrap());
        }
        assert!(factor_random_text("suzuki", 27, 0).is_err());
        assert!(factor_random_text("g2", 3, 0).is_err());
    }

    #[test]
    fn matrix_input() {
        let text = factor_matrix_text("suzuki", 8, "0 0 0 1\n0 0 1 0\n0 1 0 0\n1 0 0 0\n").unwrap();
        assert!(
            text.contains("normal form: x+(0,0) h(1) w x+(0,0)"),
            "{text}"
        );
        assert!(text.ends_with("PRODUCT OK\n"));
        let err =
            factor_matrix_text("suzuki", 8, "1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 0\n").unwrap_err();
        assert_eq!(err, Error::NotInGroup);
    }

    #[test]
    fn identities_hold() {
        let text = cell_identities_text("suzuki", 32, 5).unwrap();
        assert_eq!(text.matches(": equal").count(), 2);
        let text = cell_identities_text("ree", 27, 5).unwrap();
        assert_eq!(text.matches(": equal").count(), 4);
        assert!(!text.contains("DIFFERENT"));
        assert!(cell_identities_text("ree", 27, 0).is_err());
    }
}
