//! Element expressions: dot-separated factors `name`, `name^k`, `D^k` or `1`.

use garside::{Element, Error, GarsideTable, Result};

/// Parses and evaluates an expression such as `b.a^-1.D^2`.
pub fn parse_element(t: &GarsideTable, src: &str) -> Result<Element> {
    let src = src.trim();
    if src.is_empty() {
        return Err(Error::Domain("empty element expression".into()));
    }
    let mut acc = Element::identity();
    for factor in src.split('.') {
        let factor = factor.trim();
        let (name, power) = match factor.split_once('^') {
            Some((name, k)) => {
                let k: i64 = k
                    .trim()
                    .parse()
                    .map_err(|_| Error::Domain(format!("bad exponent in `{factor}`")))?;
                (name.trim(), k)
            }
            None => (factor, 1),
        };
        let x = match name {
            "1" => Element::identity(),
            "D" if t.lookup("D").is_none() => Element::delta_pow(power),
            _ => {
                let id = t.lookup(name).ok_or_else(|| Error::UnknownName(name.to_string()))?;
                let s = t.simple_element(id);
                let base = if power < 0 { t.invert(&s) } else { s };
                let factors = vec![base; power.unsigned_abs() as usize];
                t.multiply_all(&factors)
            }
        };
        acc = t.multiply(&acc, &x);
    }
    Ok(acc)
}
