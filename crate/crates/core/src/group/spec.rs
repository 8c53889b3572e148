use std::collections::HashMap;
use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{Elem, FiniteGroup, GroupError};

/// Largest order a generated group may reach unless overridden.
pub const DEFAULT_ORDER_CAP: usize = 10080;

/// Description of a finite group, as accepted on the command line and in
/// data files.
///
/// Element numbering is fixed per kind:
/// - `cyclic`: `k` is `r^k`.
/// - `dihedral` (order `2n`): `e·n + a` is `s^e r^a`, with `s r s = r⁻¹`.
/// - `symmetric`: permutations of `0..n` in lexicographic order.
/// - `quaternion`: `1, -1, i, -i, j, -j, k, -k`.
/// - `klein4`: `a + 2b` is the pair `(a, b)` in `C2 × C2`.
/// - `table`: as given.
/// - `perm`: breadth-first closure from the identity, multiplying by the
///   generators in listed order.
/// - `product`: tuples in lexicographic order, first factor most
///   significant.
///
/// Permutations are images of `0..degree` and compose left to right:
/// `(a·b)[i] = b[a[i]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    Cyclic { n: usize },
    Dihedral { n: usize },
    Symmetric { n: usize },
    Quaternion,
    Klein4,
    Table { table: Vec<Vec<Elem>> },
    Perm { degree: usize, generators: Vec<Vec<usize>> },
    Product { factors: Vec<GroupSpec> },
}

impl GroupSpec {
    /// The alternating group as a permutation group generated by the
    /// 3-cycles `(0 1 k)`.
    pub fn alternating(n: usize) -> GroupSpec {
        let generators = (2..n)
            .map(|k| {
                let mut p: Vec<usize> = (0..n).collect();
                p[0] = 1;
                p[1] = k;
                p[k] = 0;
                p
            })
            .collect();
        GroupSpec::Perm { degree: n, generators }
    }

    /// Resolves short names such as `C6`, `D4` (order 8), `S3`, `Q8`, `V4`,
    /// `A4` and products like `C2xC2`.
    pub fn from_name(name: &str) -> Option<GroupSpec> {
        let name = name.trim();
        if name.contains(['x', '×']) {
            let factors: Option<Vec<GroupSpec>> = name.split(['x', '×']).map(GroupSpec::from_name).collect();
            return factors.map(|factors| GroupSpec::Product { factors });
        }
        let upper = name.to_ascii_uppercase();
        match upper.as_str() {
            "Q8" => return Some(GroupSpec::Quaternion),
            "V4" | "K4" | "KLEIN4" => return Some(GroupSpec::Klein4),
            _ => {}
        }
        let head = upper.chars().next()?;
        let n: usize = upper[head.len_utf8()..].parse().ok()?;
        match head {
            'C' if n >= 1 => Some(GroupSpec::Cyclic { n }),
            'D' if n >= 1 => Some(GroupSpec::Dihedral { n }),
            'S' if n >= 1 => Some(GroupSpec::Symmetric { n }),
            'A' if n >= 3 => Some(GroupSpec::alternating(n)),
            _ => None,
        }
    }

    pub fn label(&self) -> String {
        match self {
            GroupSpec::Cyclic { n } => format!("C{n}"),
            GroupSpec::Dihedral { n } => format!("D{n}"),
            GroupSpec::Symmetric { n } => format!("S{n}"),
            GroupSpec::Quaternion => "Q8".into(),
            GroupSpec::Klein4 => "V4".into(),
            GroupSpec::Table { table } => format!("Table({})", table.len()),
            GroupSpec::Perm { degree, generators } => format!("Perm(degree {degree}, {} generators)", generators.len()),
            GroupSpec::Product { factors } => factors.iter().map(GroupSpec::label).collect::<Vec<_>>().join("x"),
        }
    }

    pub fn build(&self) -> Result<FiniteGroup, GroupError> {
        self.build_with_cap(DEFAULT_ORDER_CAP)
    }

    pub fn build_with_cap(&self, cap: usize) -> Result<FiniteGroup, GroupError> {
        let label = self.label();
        match self {
            GroupSpec::Cyclic { n } => {
                check_positive(*n)?;
                check_cap(*n, cap)?;
                let n = *n;
                FiniteGroup::from_flat(n, (0..n * n).map(|i| (i / n + i % n) % n).collect(), label)
            }
            GroupSpec::Dihedral { n } => {
                check_positive(*n)?;
                check_cap(2 * n, cap)?;
                let n = *n;
                let mul = |x: usize, y: usize| {
                    let (e1, a1) = (x / n, x % n);
                    let (e2, a2) = (y / n, y % n);
                    if e2 == 1 {
                        ((e1 + 1) % 2) * n + (a2 + n - a1) % n
                    } else {
                        e1 * n + (a1 + a2) % n
                    }
                };
                let m = 2 * n;
                FiniteGroup::from_flat(m, (0..m * m).map(|i| mul(i / m, i % m)).collect(), label)
            }
            GroupSpec::Symmetric { n } => {
                check_positive(*n)?;
                let order: usize = (1..=*n).product();
                check_cap(order, cap)?;
                let perms = lexicographic_permutations(*n);
                permutation_table(&perms, label)
            }
            GroupSpec::Quaternion => {
                // unit index u in {1, i, j, k} and sign bit: element = 2u + sign
                const UNIT: [[(usize, bool); 4]; 4] = [
                    [(0, false), (1, false), (2, false), (3, false)],
                    [(1, false), (0, true), (3, false), (2, true)],
                    [(2, false), (3, true), (0, true), (1, false)],
                    [(3, false), (2, false), (1, true), (0, true)],
                ];
                let mul = |x: usize, y: usize| {
                    let (u, neg) = UNIT[x / 2][y / 2];
                    let sign = neg ^ (x % 2 == 1) ^ (y % 2 == 1);
                    2 * u + usize::from(sign)
                };
                FiniteGroup::from_flat(8, (0..64).map(|i| mul(i / 8, i % 8)).collect(), label)
            }
            GroupSpec::Klein4 => FiniteGroup::from_flat(4, (0..16).map(|i| (i / 4) ^ (i % 4)).collect(), label),
            GroupSpec::Table { table } => FiniteGroup::from_table(table.clone(), label),
            GroupSpec::Perm { degree, generators } => {
                for p in generators {
                    let mut sorted = p.clone();
                    sorted.sort_unstable();
                    if p.len() != *degree || sorted != (0..*degree).collect::<Vec<_>>() {
                        return Err(GroupError::Malformed(format!("{p:?} is not a permutation of 0..{degree}")));
                    }
                }
                let perms = permutation_closure(*degree, generators, cap)?;
                permutation_table(&perms, label)
            }
            GroupSpec::Product { factors } => {
                if factors.is_empty() {
                    return Err(GroupError::Malformed("product needs at least one factor".into()));
                }
                let groups = factors.iter().map(|f| f.build_with_cap(cap)).collect::<Result<Vec<_>, _>>()?;
                let order = groups.iter().try_fold(1usize, |acc, g| acc.checked_mul(g.order()));
                let order = order.ok_or(GroupError::OrderCapExceeded { cap })?;
                check_cap(order, cap)?;
                let split = |mut x: usize| {
                    let mut digits = vec![0; groups.len()];
                    for (d, g) in digits.iter_mut().zip(&groups).rev() {
                        *d = x % g.order();
                        x /= g.order();
                    }
                    digits
                };
                let join = |digits: &[usize]| digits.iter().zip(&groups).fold(0, |acc, (d, g)| acc * g.order() + d);
                let mut table = Vec::with_capacity(order * order);
                for x in 0..order {
                    let dx = split(x);
                    for y in 0..order {
                        let dy = split(y);
                        let prod: Vec<usize> = groups.iter().enumerate().map(|(i, g)| g.mul(dx[i], dy[i])).collect();
                        table.push(join(&prod));
                    }
                }
                FiniteGroup::from_flat(order, table, label)
            }
        }
    }
}

fn check_positive(n: usize) -> Result<(), GroupError> {
    if n == 0 {
        Err(GroupError::Malformed("n must be positive".into()))
    } else {
        Ok(())
    }
}

fn check_cap(order: usize, cap: usize) -> Result<(), GroupError> {
    if order > cap {
        Err(GroupError::OrderCapExceeded { cap })
    } else {
        Ok(())
    }
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().map(|&i| b[i]).collect()
}

fn lexicographic_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // next permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).expect("a larger suffix element exists");
        p.swap(i, j);
        p[i + 1..].reverse();
    }
}

fn permutation_closure(degree: usize, generators: &[Vec<usize>], cap: usize) -> Result<Vec<Vec<usize>>, GroupError> {
    let identity: Vec<usize> = (0..degree).collect();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity.clone(), 0)]);
    let mut perms = vec![identity];
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for s in generators {
            let y = compose(&perms[x], s);
            if !index.contains_key(&y) {
                if perms.len() == cap {
                    return Err(GroupError::OrderCapExceeded { cap });
                }
                index.insert(y.clone(), perms.len());
                queue.push_back(perms.len());
                perms.push(y);
            }
        }
    }
    Ok(perms)
}

fn permutation_table(perms: &[Vec<usize>], label: String) -> Result<FiniteGroup, GroupError> {
    let index: HashMap<&[usize], usize> = perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let n = perms.len();
    let mut table = Vec::with_capacity(n * n);
    for a in perms {
        for b in perms {
            let ab = compose(a, b);
            let i = index.get(ab.as_slice()).ok_or_else(|| GroupError::Malformed("permutations not closed".into()))?;
            table.push(*i);
        }
    }
    FiniteGroup::from_flat(n, table, label)
}
