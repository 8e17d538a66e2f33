use std::fmt;

use super::SkewPoly;

impl fmt::Display for SkewPoly {
    /// Terms in descending graded-lex order, e.g. `x*t1^2*t2 - 3 + (1 + i)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = self.ring().names();
        for (n, (e, c)) in self.terms().rev().enumerate() {
            let text = c.to_string();
            let (negative, c) = if text.starts_with('-') {
                (true, c.neg())
            } else {
                (false, c.clone())
            };
            match (n, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            if !c.is_one() || e.total() == 0 {
                let s = c.to_string();
                factors.push(if c.is_atomic_text() { s } else { format!("({s})") });
            }
            for (name, &k) in names.iter().zip(e.as_slice()) {
                match k {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{k}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
