//! Numeric arguments: plain numbers, `pi` forms and `a:b:n` ranges.

use std::f64::consts::PI;

/// A number, `pi`, `-pi`, `k*pi`, `pi/k` or `k*pi/m`.
pub fn parse_number(s: &str) -> Result<f64, String> {
    let t = s.trim();
    if let Ok(v) = t.parse::<f64>() {
        return Ok(v);
    }
    let lower = t.to_ascii_lowercase();
    let (neg, body) = match lower.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, lower.as_str()),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let coeff = match num.strip_suffix("pi") {
        Some("") => 1.0,
        Some(k) => k
            .strip_suffix('*')
            .unwrap_or(k)
            .parse::<f64>()
            .map_err(|_| format!("cannot parse '{s}' as a number"))?,
        None => return Err(format!("cannot parse '{s}' as a number")),
    };
    let mut v = coeff * PI;
    if let Some(d) = den {
        let d: f64 = d.parse().map_err(|_| format!("cannot parse '{s}' as a number"))?;
        v /= d;
    }
    Ok(if neg { -v } else { v })
}

/// `a:b:n` gives `n` equally spaced points including both ends; anything else is one number.
pub fn parse_values(s: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [one] => Ok(vec![parse_number(one)?]),
        [a, b, n] => {
            let a = parse_number(a)?;
            let b = parse_number(b)?;
            let n: usize = n
                .trim()
                .parse()
                .map_err(|_| format!("range '{s}': point count must be a positive integer"))?;
            match n {
                0 => Err(format!("range '{s}': point count must be a positive integer")),
                1 => Ok(vec![a]),
                _ => Ok((0..n)
                    .map(|i| {
                        if i == n - 1 {
                            b
                        } else {
                            a + (b - a) * i as f64 / (n - 1) as f64
                        }
                    })
                    .collect()),
            }
        }
        _ => Err(format!("'{s}' is neither a number nor a range a:b:n")),
    }
}

/// All values of a repeatable flag, in the order given.
pub fn collect_values(args: &[String]) -> Result<Vec<f64>, String> {
    let mut out = Vec::new();
    for a in args {
        out.extend(parse_values(a)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers() {
        assert_eq!(parse_number("1.5").unwrap(), 1.5);
        assert_eq!(parse_number("pi").unwrap(), PI);
        assert_eq!(parse_number("-pi").unwrap(), -PI);
        assert_eq!(parse_number("pi/2").unwrap(), PI / 2.0);
        assert_eq!(parse_number("2pi").unwrap(), 2.0 * PI);
        assert_eq!(parse_number("3*pi/4").unwrap(), 3.0 * PI / 4.0);
        assert!(parse_number("p").is_err());
        assert!(parse_number("1,5").is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_values("0:1:5").unwrap(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let v = parse_values("0.1:pi:10").unwrap();
        assert_eq!(v.len(), 10);
        assert_eq!(v[9], PI);
        assert_eq!(parse_values("2:3:1").unwrap(), vec![2.0]);
        assert!(parse_values("0:1:0").is_err());
        assert!(parse_values("0:1").is_err());
    }
}
