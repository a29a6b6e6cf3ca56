//! Finite permutation groups and their character tables.
//!
//! Group spec strings:
//!
//! * `cyclic:n` and `sym:n`
//! * `gens:<perm>,<perm>,...` where each `<perm>` is a product of cycles such
//!   as `(0 1 2)(3 4)`; an optional `gens:<n>:...` prefix fixes the degree
//! * `quaternion`: the quaternion group acting on itself by left multiplication

mod chartable;
mod group;
mod perm;

pub use chartable::{character_table, character_table_seeded, CharacterTable, MAX_CHARTABLE_ORDER};
pub use group::{orbits, Orbit, PermGroup};
pub use perm::{conjugate, cycle_decompose, Perm};

use crate::error::{Error, Result};

fn parse_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}

/// Parses a group spec string.
pub fn build_group(spec: &str) -> Result<PermGroup> {
    let spec_t = spec.trim_end();
    let (kind, rest, rest_at) = match spec_t.find(':') {
        Some(i) => (&spec_t[..i], &spec_t[i + 1..], i + 1),
        None => (spec_t, "", spec_t.len()),
    };
    match kind {
        "cyclic" | "sym" => {
            let n: usize = rest.trim().parse().map_err(|_| {
                parse_err(
                    rest_at,
                    format!("expected a positive integer, got `{rest}`"),
                )
            })?;
            if n == 0 {
                return Err(parse_err(rest_at, "degree must be at least 1"));
            }
            if kind == "cyclic" {
                PermGroup::cyclic(n)
            } else {
                PermGroup::symmetric(n)
            }
        }
        "quaternion" if rest.is_empty() => quaternion(),
        "gens" => parse_gens(rest, rest_at),
        _ => Err(parse_err(
            0,
            format!("unknown group kind `{kind}` (expected cyclic, sym, gens or quaternion)"),
        )),
    }
}

fn parse_gens(src: &str, base: usize) -> Result<PermGroup> {
    let (degree, body, base) = match src.find(':') {
        Some(i) => {
            let n: usize = src[..i]
                .trim()
                .parse()
                .map_err(|_| parse_err(base, "expected a degree before `:`"))?;
            (Some(n), &src[i + 1..], base + i + 1)
        }
        None => (None, src, base),
    };
    let bytes = body.as_bytes();
    let mut gens: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    let mut pos = 0;
    let mut max_point = None::<usize>;
    while pos < bytes.len() {
        match bytes[pos] {
            b' ' => pos += 1,
            b',' => {
                gens.push(Vec::new());
                pos += 1;
            }
            b'(' => {
                let close = body[pos..]
                    .find(')')
                    .map(|i| pos + i)
                    .ok_or_else(|| parse_err(base + pos, "unclosed `(`"))?;
                let mut cycle = Vec::new();
                let mut at = pos + 1;
                for tok in body[pos + 1..close].split([' ', ',']) {
                    if !tok.is_empty() {
                        let x: usize = tok
                            .parse()
                            .map_err(|_| parse_err(base + at, format!("bad point `{tok}`")))?;
                        max_point = Some(max_point.map_or(x, |m| m.max(x)));
                        cycle.push(x);
                    }
                    at += tok.len() + 1;
                }
                gens.last_mut().expect("non-empty").push(cycle);
                pos = close + 1;
            }
            c => {
                return Err(parse_err(
                    base + pos,
                    format!("unexpected character `{}`", c as char),
                ))
            }
        }
    }
    let needed = max_point.map_or(1, |m| m + 1);
    let n = match degree {
        Some(n) if n < needed => {
            return Err(parse_err(
                base,
                format!("degree {n} too small for point {}", needed - 1),
            ))
        }
        Some(n) => n,
        None => needed,
    };
    let perms = gens
        .iter()
        .map(|cycles| Perm::from_cycles(n, cycles))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| parse_err(base, e.to_string()))?;
    PermGroup::generate(n, perms)
}

/// Units 1, i, j, k with signs; element `2u + s` is `(-1)^s · unit_u`.
fn quaternion_mul(a: usize, b: usize) -> usize {
    // unit products: (sign, unit)
    const TABLE: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let (sa, ua) = (a % 2, a / 2);
    let (sb, ub) = (b % 2, b / 2);
    let (s, u) = TABLE[ua][ub];
    2 * u + (sa + sb + s) % 2
}

fn quaternion() -> Result<PermGroup> {
    let left = |q: usize| Perm::from_images((0..8).map(|x| quaternion_mul(q, x)).collect());
    PermGroup::generate(8, vec![left(2)?, left(4)?])
}
