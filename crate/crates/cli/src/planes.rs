//! Plane input: `e1,e2,e4`, `(1,0,1/2,0,0,0,0),e3`, or matrix rows
//! separated by `;`.

use anyhow::{anyhow, bail, Context, Result};
use g2topo::g2::{Plane, PlaneClass, Vector7};
use num_rational::BigRational;

fn split_top_level(text: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for ch in text.chars() {
        match ch {
            '(' | '[' => {
                depth += 1;
                current.push(ch);
            }
            ')' | ']' => {
                depth = depth.saturating_sub(1);
                current.push(ch);
            }
            ',' if depth == 0 => parts.push(std::mem::take(&mut current)),
            _ => current.push(ch),
        }
    }
    parts.push(current);
    parts.into_iter().map(|p| p.trim().to_string()).collect()
}

fn rational(s: &str) -> Result<BigRational> {
    s.trim().parse().map_err(|_| anyhow!("`{s}` is not a rational number"))
}

fn tuple(entries: &[&str]) -> Result<Vector7> {
    if entries.len() != 7 {
        bail!("a vector needs 7 coordinates, got {}", entries.len());
    }
    let mut v = Vector7::zero();
    for (i, e) in entries.iter().enumerate() {
        v.0[i] = rational(e)?;
    }
    Ok(v)
}

fn vector(token: &str) -> Result<Vector7> {
    let (negate, body) = match token.strip_prefix('-') {
        Some(rest) => (true, rest.trim()),
        None => (false, token),
    };
    let v = if let Some(k) = body.strip_prefix('e') {
        let k: usize = k.parse().with_context(|| format!("bad basis vector `{token}`"))?;
        if !(1..=7).contains(&k) {
            bail!("basis vector `{token}` outside e1..e7");
        }
        Vector7::e(k)
    } else if let Some(inner) = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')) {
        tuple(&inner.split(',').collect::<Vec<_>>())?
    } else {
        bail!("cannot read vector `{token}`");
    };
    Ok(if negate { -&v } else { v })
}

pub fn parse_vectors(text: &str) -> Result<Vec<Vector7>> {
    let text = text.trim();
    if text.contains(';') {
        return text
            .split(';')
            .filter(|row| !row.trim().is_empty())
            .map(|row| tuple(&row.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect::<Vec<_>>()))
            .collect();
    }
    split_top_level(text).iter().map(|t| vector(t)).collect()
}

pub fn parse_plane(text: &str) -> Result<Plane> {
    Ok(Plane::new(parse_vectors(text)?)?)
}

pub fn class_name(class: &PlaneClass) -> String {
    match class {
        PlaneClass::AssociativePositive => "ass+".into(),
        PlaneClass::AssociativeNegative => "ass-".into(),
        PlaneClass::HarveyLawson => "hl".into(),
        PlaneClass::Generic { phi_squared, positive } => {
            let sign = if *positive { '+' } else { '-' };
            format!("generic (Φ² = {phi_squared}, sign {sign})")
        }
    }
}
