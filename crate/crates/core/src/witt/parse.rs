//! Text syntax for vector fields.
//!
//! ```text
//! elem  := term (('+' | '-') term)*
//! term  := [rational ['*']] [ 't^(' int (',' int)* ')' ] 'd_' int
//! ```
//!
//! Directions are 1-based. `d_i` alone means `t^(0,..,0) d_i`; a leading
//! `-` is allowed. Whitespace is insignificant.

use std::fmt;

use num_traits::One;

use super::{MultiIndex, WittElem, WittError, WittGen};
use crate::exact::Rational;

pub fn parse_witt(n: usize, text: &str) -> Result<WittElem, WittError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(WittError::Parse("empty element".into()));
    }
    let mut terms = Vec::new();
    let mut rest = compact.as_str();
    let mut sign = Rational::one();
    if let Some(r) = rest.strip_prefix('-') {
        sign = -sign;
        rest = r;
    } else if let Some(r) = rest.strip_prefix('+') {
        rest = r;
    }
    loop {
        // a term ends at the next top-level sign (not inside parentheses)
        let mut depth = 0usize;
        let mut end = rest.len();
        for (i, ch) in rest.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth = depth.saturating_sub(1),
                '+' | '-' if depth == 0 && i > 0 => {
                    end = i;
                    break;
                }
                _ => {}
            }
        }
        let (term, tail) = rest.split_at(end);
        let (g, c) = parse_term(n, term)?;
        terms.push((g, c * &sign));
        if tail.is_empty() {
            break;
        }
        sign = if tail.starts_with('-') {
            -Rational::one()
        } else {
            Rational::one()
        };
        rest = &tail[1..];
    }
    Ok(WittElem::from_terms(n, terms))
}

fn parse_term(n: usize, term: &str) -> Result<(WittGen, Rational), WittError> {
    let err = |m: &str| WittError::Parse(format!("{m} in term `{term}`"));
    let t_pos = term.find("t^(");
    let d_pos = term.find("d_").ok_or_else(|| err("missing d_i"))?;
    let coeff_end = t_pos.unwrap_or(d_pos);
    let coeff_text = term[..coeff_end].trim_end_matches('*');
    let coeff = if coeff_text.is_empty() {
        Rational::one()
    } else {
        coeff_text
            .parse::<Rational>()
            .map_err(|_| err("bad coefficient"))?
    };
    let alpha = match t_pos {
        Some(p) => {
            let close = term[p..]
                .find(')')
                .ok_or_else(|| err("unclosed exponent"))?
                + p;
            let entries: Result<Vec<u32>, _> = term[p + 3..close]
                .split(',')
                .map(|x| x.trim().parse::<u32>())
                .collect();
            let entries = entries.map_err(|_| err("bad exponent"))?;
            if entries.len() != n {
                return Err(err(&format!(
                    "exponent has {} entries, rank is {n}",
                    entries.len()
                )));
            }
            if close + 1 != d_pos {
                return Err(err("unexpected text between exponent and d_i"));
            }
            MultiIndex::from_slice(&entries)
        }
        None => MultiIndex::zero(n),
    };
    let dir: usize = term[d_pos + 2..]
        .parse()
        .map_err(|_| err("bad direction"))?;
    if dir == 0 || dir > n {
        return Err(err(&format!("direction must be in 1..={n}")));
    }
    Ok((WittGen::new(alpha, dir - 1), coeff))
}

pub(crate) fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a WittGen, &'a Rational)>,
) -> fmt::Result {
    let mut empty = true;
    for (g, c) in terms {
        let neg = c.is_negative();
        let mag = c.abs();
        if empty {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        empty = false;
        if !mag.is_one() {
            write!(f, "{mag} ")?;
        }
        write!(f, "t^{} d_{}", g.alpha, g.dir + 1)?;
    }
    if empty {
        write!(f, "0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn round_trip() {
        let x = parse_witt(2, "t^(1,0) d_2 - 3/2 t^(0,1) d_1 + d_2").unwrap();
        assert_eq!(x.len(), 3);
        let back = parse_witt(2, &x.to_string()).unwrap();
        assert_eq!(back, x);
        assert!(parse_witt(2, "-d_1")
            .unwrap()
            .terms()
            .iter()
            .all(|(_, c)| *c == -1));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_witt(2, "t^(1) d_1").is_err());
        assert!(parse_witt(2, "t^(1,0) d_3").is_err());
        assert!(parse_witt(1, "").is_err());
        assert!(parse_witt(1, "2.5 d_1").is_err());
        assert!(!parse_witt(1, "0 d_1")
            .unwrap()
            .terms()
            .iter()
            .any(|(_, c)| c.is_zero()));
    }
}
