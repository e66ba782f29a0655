//! Named quivers.
//!
//! Vertices are labelled `"1"`, `"2"`, ... Conventions:
//!
//! * `K(n)`: `1 -> 2` with `n` parallel arrows.
//! * `A(n)`: the path `1 -> 2 -> ... -> n`.
//! * `D(n)`, `E(n)`, `E~(n)`: stars centred at `1`, every arrow pointing
//!   toward the centre.
//! * `D~(n)`: a spine `1 - ... - (n-3)` oriented toward `1`, with two leaves
//!   pointing into each end of the spine. `D~(4)` is the four-leaf star with
//!   central sink `1`.
//! * `A~(p,q)`: source `1`, sink `p+1`, one path of `p` arrows through
//!   `2..p` and one of `q` arrows through `p+2..p+q`. `A~(1,1) = K(2)`,
//!   `A~(2,1)` is `1->2->3, 1->3`, `A~(2,2)` is `1->2->3, 1->4->3`.

use crate::error::{NcError, Result};

use super::Quiver;

fn labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

pub fn kronecker(n: usize) -> Quiver {
    Quiver::from_indices(labels(2), vec![(0, 1); n])
        .expect("valid")
        .with_name(format!("K({n})"))
}

pub fn path(n: usize) -> Quiver {
    let arrows = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    Quiver::from_indices(labels(n), arrows).expect("valid").with_name(format!("A({n})"))
}

/// Star with the given arm lengths (in edges), arrows toward the centre `1`.
pub fn star(arms: &[usize]) -> Quiver {
    let n = 1 + arms.iter().sum::<usize>();
    let mut arrows = Vec::new();
    let mut next = 1;
    for &len in arms {
        let mut prev = 0;
        for _ in 0..len {
            arrows.push((next, prev));
            prev = next;
            next += 1;
        }
    }
    Quiver::from_indices(labels(n), arrows).expect("valid")
}

pub fn affine_a(p: usize, q: usize) -> Result<Quiver> {
    if p == 0 || q == 0 {
        return Err(NcError::InvalidQuiver("A~(p,q) needs p,q >= 1".into()));
    }
    let n = p + q;
    let sink = p;
    let mut arrows = Vec::new();
    let mut chain = |inner: Vec<usize>| {
        let mut prev = 0;
        for v in inner {
            arrows.push((prev, v));
            prev = v;
        }
        arrows.push((prev, sink));
    };
    chain((1..p).collect());
    chain((p + 1..n).collect());
    Ok(Quiver::from_indices(labels(n), arrows)?.with_name(format!("A~({p},{q})")))
}

pub fn affine_d(n: usize) -> Result<Quiver> {
    if n < 4 {
        return Err(NcError::InvalidQuiver("D~(n) needs n >= 4".into()));
    }
    let spine = n - 3;
    let mut arrows: Vec<(usize, usize)> = (1..spine).map(|i| (i, i - 1)).collect();
    let last = spine - 1;
    arrows.extend([(spine, 0), (spine + 1, 0), (spine + 2, last), (spine + 3, last)]);
    Ok(Quiver::from_indices(labels(n + 1), arrows)?.with_name(format!("D~({n})")))
}

pub fn by_name(name: &str) -> Result<Quiver> {
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || NcError::InvalidQuiver(format!("unknown quiver '{name}'"));
    let open = compact.find('(').ok_or_else(bad)?;
    if !compact.ends_with(')') {
        return Err(bad());
    }
    let head = &compact[..open];
    let args: Vec<usize> = compact[open + 1..compact.len() - 1]
        .split(',')
        .map(|a| a.parse::<usize>().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    let one = || match args.as_slice() {
        [a] => Ok(*a),
        _ => Err(bad()),
    };
    let q = match head {
        "K" => kronecker(one()?),
        "A" => {
            let n = one()?;
            if n == 0 {
                return Err(bad());
            }
            path(n)
        }
        "D" => {
            let n = one()?;
            if n < 4 {
                return Err(bad());
            }
            star(&[1, 1, n - 3]).with_name(format!("D({n})"))
        }
        "E" => {
            let n = one()?;
            if !(6..=8).contains(&n) {
                return Err(bad());
            }
            star(&[1, 2, n - 4]).with_name(format!("E({n})"))
        }
        "A~" => match args.as_slice() {
            [p, q] => affine_a(*p, *q)?,
            _ => return Err(bad()),
        },
        "D~" => affine_d(one()?)?,
        "E~" => {
            let arms: &[usize] = match one()? {
                6 => &[2, 2, 2],
                7 => &[1, 3, 3],
                8 => &[1, 2, 5],
                _ => return Err(bad()),
            };
            star(arms).with_name(format!("E~({})", args[0]))
        }
        _ => return Err(bad()),
    };
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_counts() {
        let cases = [
            ("K(2)", 2),
            ("A(3)", 3),
            ("D(4)", 4),
            ("E(6)", 6),
            ("E(8)", 8),
            ("A~(1,1)", 2),
            ("A~(3,2)", 5),
            ("D~(4)", 5),
            ("D~(7)", 8),
            ("E~(6)", 7),
            ("E~(7)", 8),
            ("E~(8)", 9),
        ];
        for (name, n) in cases {
            assert_eq!(by_name(name).unwrap().vertex_count(), n, "{name}");
        }
    }

    #[test]
    fn affine_a_matches_named_examples() {
        let q1 = Quiver::new(&["1", "2", "3"], &[("1", "2"), ("2", "3"), ("1", "3")]).unwrap();
        let a21 = by_name("A~(2,1)").unwrap();
        assert_eq!(a21.arrow_counts(), q1.arrow_counts());
        let q2 = Quiver::new(
            &["1", "2", "3", "4"],
            &[("1", "2"), ("2", "3"), ("1", "4"), ("4", "3")],
        )
        .unwrap();
        assert_eq!(by_name("A~(2,2)").unwrap().arrow_counts(), q2.arrow_counts());
        assert_eq!(by_name("A~(1,1)").unwrap(), by_name("K(2)").unwrap());
    }

    #[test]
    fn rejects_unknown_names() {
        for bad in ["K", "K()", "X(3)", "E(9)", "D(3)", "A~(0,2)", "E~(5)", "A(0)", "K(2"] {
            assert!(by_name(bad).is_err(), "{bad}");
        }
    }
}
