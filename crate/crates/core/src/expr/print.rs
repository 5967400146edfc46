use std::fmt::{self, Write};

use num_traits::One;

use super::OperatorExpr;

pub(super) fn write_expr(f: &mut fmt::Formatter<'_>, e: &OperatorExpr) -> fmt::Result {
    match e {
        OperatorExpr::Sum(terms) => {
            for (k, term) in terms.iter().enumerate() {
                if k == 0 {
                    write_term(f, term)?;
                    continue;
                }
                match negated_view(term) {
                    Some(rest) => {
                        f.write_str(" - ")?;
                        write_factors(f, &rest)?;
                    }
                    None => {
                        f.write_str(" + ")?;
                        write_term(f, term)?;
                    }
                }
            }
            Ok(())
        }
        other => write_term(f, other),
    }
}

/// For a non-leading term that the parser would have produced from `- rest`,
/// returns `rest` as a factor list.
fn negated_view(term: &OperatorExpr) -> Option<Vec<OperatorExpr>> {
    match term {
        OperatorExpr::Rational(r) if term.is_negative_literal() => {
            Some(vec![OperatorExpr::Rational(-r.clone())])
        }
        OperatorExpr::Product(fs) if fs.len() >= 2 && fs[0].is_minus_one() => {
            let rest = &fs[1..];
            // `- 2` would re-parse as the literal -2, not as -1*2.
            if rest.len() == 1 && matches!(rest[0], OperatorExpr::Rational(_)) {
                None
            } else {
                Some(rest.to_vec())
            }
        }
        _ => None,
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, term: &OperatorExpr) -> fmt::Result {
    match term {
        OperatorExpr::Product(fs) => write_factors(f, fs),
        other => write_factor(f, other),
    }
}

fn write_factors(f: &mut fmt::Formatter<'_>, fs: &[OperatorExpr]) -> fmt::Result {
    for (k, factor) in fs.iter().enumerate() {
        if k > 0 {
            f.write_char('*')?;
        }
        write_factor(f, factor)?;
    }
    Ok(())
}

fn write_factor(f: &mut fmt::Formatter<'_>, e: &OperatorExpr) -> fmt::Result {
    match e {
        OperatorExpr::Sum(_) | OperatorExpr::Product(_) => {
            f.write_char('(')?;
            write_expr(f, e)?;
            f.write_char(')')
        }
        OperatorExpr::Power(base, exp) => {
            let bare = match base.as_ref() {
                OperatorExpr::Atom(_) => true,
                OperatorExpr::Rational(r) => r.is_integer() && !base.is_negative_literal(),
                _ => false,
            };
            if bare {
                write_factor(f, base)?;
            } else {
                f.write_char('(')?;
                write_expr(f, base)?;
                f.write_char(')')?;
            }
            write!(f, "^{exp}")
        }
        OperatorExpr::Atom(a) => f.write_str(a.name()),
        OperatorExpr::Rational(r) => {
            if r.denom().is_one() {
                write!(f, "{}", r.numer())
            } else {
                write!(f, "{}/{}", r.numer(), r.denom())
            }
        }
    }
}
