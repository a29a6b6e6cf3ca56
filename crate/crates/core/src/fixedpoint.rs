//! Fixed-point resolution counting from tabulated finite-group data.
//!
//! A sector fixed by a residual symmetry group `Q` splits into pieces
//! counted by the subgroup of `Q` whose action on the centralizer character
//! `σ` is compensated by the twist character of the same element.
//!
//! Input documents are JSON:
//!
//! ```json
//! {
//!   "centralizer": "cyclic:4",
//!   "characters": [[1, 1, 1, 1], [[1, 0], [0, 1], [-1, 0], [0, -1]]],
//!   "sigma": 1,
//!   "quotient": "cyclic:2",
//!   "generators": [{"action": [0, 1], "twist": 0}]
//! }
//! ```
//!
//! Character values are listed over the conjugacy classes of the centralizer
//! in the order of [`PermGroup::conjugacy_classes`]; each value is a number
//! or a `[re, im]` pair. `generators` has one entry per generator of the
//! quotient group spec, giving the permutation of character indices and the
//! index of the twist character.

use std::collections::VecDeque;

use num_complex::Complex64;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::groups::{build_group, Perm, PermGroup};
use crate::theories::{byte_offset, field, schema};

const TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct ResolutionInput {
    centralizer: PermGroup,
    characters: Vec<Vec<Complex64>>,
    sigma: usize,
    quotient: PermGroup,
    /// Per quotient element: permutation of character indices.
    action: Vec<Vec<usize>>,
    /// Per quotient element: twist character index.
    twist: Vec<usize>,
}

impl ResolutionInput {
    /// `generators[i]` is `(action, twist)` for the `i`-th generator of
    /// `quotient`. The data is extended to all of `quotient` as a
    /// homomorphism; inconsistent extensions are rejected.
    pub fn new(
        centralizer: PermGroup,
        characters: Vec<Vec<Complex64>>,
        sigma: usize,
        quotient: PermGroup,
        generators: Vec<(Vec<usize>, usize)>,
    ) -> Result<Self> {
        let classes = centralizer.conjugacy_classes();
        let sizes: Vec<f64> = classes.iter().map(|c| c.len() as f64).collect();
        let order = centralizer.order() as f64;
        let r = characters.len();
        for (i, chi) in characters.iter().enumerate() {
            if chi.len() != classes.len() {
                return Err(Error::Inconsistent(format!(
                    "character {i} has {} values for {} classes",
                    chi.len(),
                    classes.len()
                )));
            }
            let norm: f64 = chi
                .iter()
                .zip(&sizes)
                .map(|(z, s)| z.norm_sqr() * s)
                .sum::<f64>()
                / order;
            if (norm - 1.0).abs() > TOL {
                return Err(Error::Inconsistent(format!(
                    "character {i} is not irreducible (<chi, chi> = {norm})"
                )));
            }
        }
        if sigma >= r {
            return Err(Error::Inconsistent(format!(
                "sigma index {sigma} out of range"
            )));
        }
        if generators.len() != quotient.generators().len() {
            return Err(Error::Inconsistent(format!(
                "{} generator entries for {} quotient generators",
                generators.len(),
                quotient.generators().len()
            )));
        }
        for (a, t) in &generators {
            Perm::from_images(a.clone())
                .ok()
                .filter(|p| p.degree() == r)
                .ok_or_else(|| {
                    Error::Inconsistent(format!("{a:?} is not a permutation of {r} characters"))
                })?;
            if *t >= r {
                return Err(Error::Inconsistent(format!("twist index {t} out of range")));
            }
            let t0 = characters[*t][0];
            if (t0 - 1.0).norm() > TOL {
                return Err(Error::Inconsistent(format!(
                    "twist character {t} is not one-dimensional"
                )));
            }
        }
        let trivial = characters
            .iter()
            .position(|c| c.iter().all(|z| (z - 1.0).norm() < TOL))
            .ok_or_else(|| Error::Inconsistent("the trivial character is not listed".into()))?;

        let mut inp = Self {
            centralizer,
            characters,
            sigma,
            quotient,
            action: Vec::new(),
            twist: Vec::new(),
        };
        inp.extend(&generators, trivial)?;
        Ok(inp)
    }

    fn product(&self, a: usize, b: usize) -> Result<usize> {
        let prod: Vec<Complex64> = self.characters[a]
            .iter()
            .zip(&self.characters[b])
            .map(|(x, y)| x * y)
            .collect();
        self.characters
            .iter()
            .position(|c| c.iter().zip(&prod).all(|(x, y)| (x - y).norm() < TOL))
            .ok_or_else(|| {
                Error::Inconsistent(format!("product of characters {a} and {b} is not listed"))
            })
    }

    fn extend(&mut self, generators: &[(Vec<usize>, usize)], trivial: usize) -> Result<()> {
        let nq = self.quotient.order();
        let r = self.characters.len();
        let mut action: Vec<Option<Vec<usize>>> = vec![None; nq];
        let mut twist: Vec<Option<usize>> = vec![None; nq];
        action[0] = Some((0..r).collect());
        twist[0] = Some(trivial);
        let gens: Vec<Perm> = self.quotient.generators().to_vec();
        let mut queue = VecDeque::from([0usize]);
        let consistent =
            |old: &Option<Vec<usize>>, oldt: &Option<usize>, a: &Vec<usize>, t: usize| {
                old.as_ref().is_none_or(|o| o == a) && oldt.is_none_or(|o| o == t)
            };
        while let Some(x) = queue.pop_front() {
            let ax = action[x].clone().expect("visited");
            let tx = twist[x].expect("visited");
            for (g, (ag, tg)) in gens.iter().zip(generators) {
                let y = self
                    .quotient
                    .index_of(&g.compose(&self.quotient.elements()[x]))
                    .expect("closed");
                let ay: Vec<usize> = ax.iter().map(|&i| ag[i]).collect();
                let ty = self.product(*tg, tx)?;
                if !consistent(&action[y], &twist[y], &ay, ty) {
                    return Err(Error::Inconsistent(
                        "action and twist do not define a homomorphism on the quotient".into(),
                    ));
                }
                if action[y].is_none() {
                    action[y] = Some(ay);
                    twist[y] = Some(ty);
                    queue.push_back(y);
                }
            }
        }
        self.action = action
            .into_iter()
            .map(|a| a.expect("group generated"))
            .collect();
        self.twist = twist
            .into_iter()
            .map(|t| t.expect("group generated"))
            .collect();

        // homomorphism on every product
        for (x, px) in self.quotient.elements().iter().enumerate() {
            for (y, py) in self.quotient.elements().iter().enumerate() {
                let xy = self.quotient.index_of(&px.compose(py)).expect("closed");
                let composed: Vec<usize> =
                    self.action[y].iter().map(|&i| self.action[x][i]).collect();
                if composed != self.action[xy]
                    || self.product(self.twist[x], self.twist[y])? != self.twist[xy]
                {
                    return Err(Error::Inconsistent(
                        "action and twist do not define a homomorphism on the quotient".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn centralizer(&self) -> &PermGroup {
        &self.centralizer
    }

    pub fn quotient(&self) -> &PermGroup {
        &self.quotient
    }

    pub fn characters(&self) -> &[Vec<Complex64>] {
        &self.characters
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    /// Same data with a different `σ`.
    pub fn with_sigma(&self, sigma: usize) -> Result<Self> {
        if sigma >= self.characters.len() {
            return Err(Error::Inconsistent(format!(
                "sigma index {sigma} out of range"
            )));
        }
        Ok(Self {
            sigma,
            ..self.clone()
        })
    }

    /// Parses the JSON document described in the module docs.
    pub fn from_json(bytes: &[u8]) -> Result<Self> {
        let value: Value = serde_json::from_slice(bytes).map_err(|e| Error::Parse {
            offset: byte_offset(bytes, e.line(), e.column()),
            message: e.to_string(),
        })?;
        let obj = value.as_object().ok_or_else(|| Error::Parse {
            offset: 0,
            message: "top-level value must be a JSON object".into(),
        })?;
        const KEYS: [&str; 5] = [
            "centralizer",
            "characters",
            "sigma",
            "quotient",
            "generators",
        ];
        if let Some(extra) = obj.keys().find(|k| !KEYS.contains(&k.as_str())) {
            return Err(schema(extra, "unknown key"));
        }
        let group = |key: &str| -> Result<PermGroup> {
            let s = field(obj, key)?
                .as_str()
                .ok_or_else(|| schema(key, "must be a group spec string"))?;
            build_group(s)
        };
        let centralizer = group("centralizer")?;
        let quotient = group("quotient")?;
        let characters = field(obj, "characters")?
            .as_array()
            .ok_or_else(|| schema("characters", "must be an array of value lists"))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| schema("characters", "must be an array of value lists"))?
                    .iter()
                    .map(complex_value)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let sigma = field(obj, "sigma")?
            .as_u64()
            .ok_or_else(|| schema("sigma", "must be a character index"))?
            as usize;
        let generators = field(obj, "generators")?
            .as_array()
            .ok_or_else(|| schema("generators", "must be an array of objects"))?
            .iter()
            .map(|g| {
                let action = g
                    .get("action")
                    .and_then(Value::as_array)
                    .ok_or_else(|| schema("generators", "each entry needs an `action` array"))?
                    .iter()
                    .map(|x| {
                        x.as_u64()
                            .map(|x| x as usize)
                            .ok_or_else(|| schema("generators", "action entries must be indices"))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let twist = g
                    .get("twist")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| schema("generators", "each entry needs a `twist` index"))?;
                Ok((action, twist as usize))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(centralizer, characters, sigma, quotient, generators)
    }
}

fn complex_value(v: &Value) -> Result<Complex64> {
    if let Some(x) = v.as_f64() {
        return Ok(Complex64::new(x, 0.0));
    }
    match v.as_array().map(Vec::as_slice) {
        Some([re, im]) => match (re.as_f64(), im.as_f64()) {
            (Some(re), Some(im)) => Ok(Complex64::new(re, im)),
            _ => Err(schema(
                "characters",
                "values must be numbers or [re, im] pairs",
            )),
        },
        _ => Err(schema(
            "characters",
            "values must be numbers or [re, im] pairs",
        )),
    }
}

/// `{h ∈ Q : σ^h = σ · twist_h}` as quotient element indices.
pub fn fixed_set(inp: &ResolutionInput) -> Result<Vec<usize>> {
    let mut fixed = Vec::new();
    for h in 0..inp.quotient.order() {
        if inp.action[h][inp.sigma] == inp.product(inp.sigma, inp.twist[h])? {
            fixed.push(h);
        }
    }
    let elems = inp.quotient.elements();
    for &a in &fixed {
        for &b in &fixed {
            let ab = inp
                .quotient
                .index_of(&elems[a].compose(&elems[b]))
                .expect("closed");
            if fixed.binary_search(&ab).is_err() {
                return Err(Error::Inconsistent(
                    "fixed set is not closed under products".into(),
                ));
            }
        }
    }
    Ok(fixed)
}

/// Number of irreducible pieces; only cyclic fixed sets are supported.
pub fn resolution_count(inp: &ResolutionInput) -> Result<usize> {
    let fixed = fixed_set(inp)?;
    let elems = inp.quotient.elements();
    if fixed.iter().any(|&h| elems[h].order() == fixed.len()) {
        Ok(fixed.len())
    } else {
        Err(Error::Unsupported(format!(
            "fixed set of order {} is not cyclic; requires cocycle data",
            fixed.len()
        )))
    }
}

/// Exponents `σ = 0, +1, −1, 2` of the `Z4` characters, in table order.
pub const H8_SIGMAS: [i32; 4] = [0, 1, -1, 2];

/// Quaternion-group data at level `k1`: centralizer `Z4` with characters
/// indexed by exponent, `Q = Z2` inverting exponents, twist `χ_{2k1 mod 4}`.
pub fn h8_input(k1: u32, sigma: i32) -> Result<ResolutionInput> {
    if k1 == 0 {
        return Err(Error::Parameter("k1 must be positive".into()));
    }
    let z4 = PermGroup::cyclic(4)?;
    let gen = Perm::from_images(vec![1, 2, 3, 0])?;
    // exponent j of each class representative, g^j
    let mut power = Perm::identity(4);
    let mut exponent_of = [0usize; 4];
    for j in 0..4 {
        exponent_of[z4.index_of(&power).expect("member")] = j;
        power = gen.compose(&power);
    }
    let classes = z4.conjugacy_classes();
    let i = Complex64::i();
    let characters: Vec<Vec<Complex64>> = (0..4)
        .map(|s| {
            classes
                .iter()
                .map(|c| i.powi((s * exponent_of[c[0]]) as i32))
                .collect()
        })
        .collect();
    let invert = vec![0, 3, 2, 1];
    let twist = (2 * k1 as usize) % 4;
    ResolutionInput::new(
        z4,
        characters,
        sigma.rem_euclid(4) as usize,
        PermGroup::cyclic(2)?,
        vec![(invert, twist)],
    )
}

/// Resolution counts for `σ = 0, +1, −1, 2`.
pub fn h8_example(k1: u32) -> Result<Vec<(i32, usize)>> {
    H8_SIGMAS
        .iter()
        .map(|&s| Ok((s, resolution_count(&h8_input(k1, s)?)?)))
        .collect()
}
