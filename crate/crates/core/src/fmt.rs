//! Shared text rendering for linear combinations: `2*u_2 - u_0`.

use std::fmt::{self, Write};

use crate::rational::Rational;

/// Writes `Σ c·b` in the given order. `basis` returns `None` for the unit
/// basis element, in which case only the coefficient is printed.
pub(crate) fn write_terms<'a, I, B>(f: &mut impl Write, terms: I, mut basis: B) -> fmt::Result
where
    I: IntoIterator<Item = (&'a Rational, Option<String>)>,
    B: FnMut(&str) -> String,
{
    let mut first = true;
    for (c, b) in terms {
        let neg = c.is_negative();
        let mag = c.abs();
        if first {
            if neg {
                f.write_char('-')?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        match b {
            None => write!(f, "{mag}")?,
            Some(b) if mag.is_one() => f.write_str(&basis(&b))?,
            Some(b) => write!(f, "{mag}*{}", basis(&b))?,
        }
    }
    if first {
        f.write_char('0')?;
    }
    Ok(())
}
