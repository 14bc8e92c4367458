//! Brute-force partition counting over hand-listed positive roots.

/// Positive roots of A_1^{(1)} up to δ-depth `n`, as (α_0, α_1) coordinates,
/// one entry per unit of multiplicity.
pub fn a1_roots(n: i64) -> Vec<[i64; 2]> {
    let mut out = vec![[0, 1]];
    for k in 1..=n {
        out.push([k, k + 1]); // α_1 + kδ
        out.push([k, k - 1]); // −α_1 + kδ
        out.push([k, k]); // kδ
    }
    out
}

/// Same for A_2^{(1)}; δ = (1,1,1), imaginary roots have multiplicity 2.
pub fn a2_roots(n: i64) -> Vec<[i64; 3]> {
    let finite = [[0, 1, 0], [0, 0, 1], [0, 1, 1]];
    let mut out: Vec<[i64; 3]> = finite.to_vec();
    for k in 1..=n {
        for b in finite {
            out.push([k, k + b[1], k + b[2]]);
            out.push([k, k - b[1], k - b[2]]);
        }
        out.push([k, k, k]);
        out.push([k, k, k]);
    }
    out
}

/// Number of ways to write `target` as an unordered sum of entries of `roots`
/// (repeated entries count as different colours).
pub fn count_multisets<const N: usize>(roots: &[[i64; N]], target: [i64; N]) -> u128 {
    fn go<const N: usize>(roots: &[[i64; N]], i: usize, rem: [i64; N]) -> u128 {
        if rem.iter().all(|&x| x == 0) {
            return 1;
        }
        if i == roots.len() {
            return 0;
        }
        let mut total = 0;
        let mut cur = rem;
        loop {
            total += go(roots, i + 1, cur);
            for (c, r) in cur.iter_mut().zip(&roots[i]) {
                *c -= r;
            }
            if cur.iter().any(|&x| x < 0) {
                return total;
            }
        }
    }
    go(roots, 0, target)
}

pub fn boxes<const N: usize>(hi: [i64; N]) -> Vec<[i64; N]> {
    let mut out = vec![[0; N]];
    for (axis, &h) in hi.iter().enumerate() {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=h).map(move |v| {
                    let mut q = p;
                    q[axis] = v;
                    q
                })
            })
            .collect();
    }
    out
}
