//! Radian parsing with `pi` literals: `pi`, `-pi/2`, `3pi/4`, `2*pi/3`, `0.25`.

use std::f64::consts::PI;

pub fn parse_angle(raw: &str) -> Result<f64, String> {
    let s: String = raw.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_ascii_lowercase();
    if s.is_empty() {
        return Err("empty angle".into());
    }
    let value = match s.find("pi") {
        Some(pos) => pi_multiple(&s, pos, raw)?,
        None => s.parse::<f64>().map_err(|_| format!("cannot parse angle `{raw}`"))?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("angle `{raw}` is not finite"))
    }
}

fn pi_multiple(s: &str, pos: usize, raw: &str) -> Result<f64, String> {
    let (head, tail) = (&s[..pos], &s[pos + 2..]);
    let head = head.strip_suffix('*').unwrap_or(head);
    let coef = match head {
        "" | "+" => 1.0,
        "-" => -1.0,
        h => h.parse::<f64>().map_err(|_| format!("bad coefficient in angle `{raw}`"))?,
    };
    let denom = match tail {
        "" => 1.0,
        t => {
            let d = t.strip_prefix('/').ok_or_else(|| format!("unexpected `{t}` in angle `{raw}`"))?;
            let d: f64 = d.parse().map_err(|_| format!("bad denominator in angle `{raw}`"))?;
            if d == 0.0 {
                return Err(format!("zero denominator in angle `{raw}`"));
            }
            d
        }
    };
    Ok(coef * PI / denom)
}
