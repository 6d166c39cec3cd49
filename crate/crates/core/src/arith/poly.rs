//! Dense polynomial helpers over `Z/q`, little-endian coefficient vectors.
//! Only what the ring kernel needs: multiplication, reduction by a monic
//! modulus, and exact division tests over `F_p`.

pub(crate) fn mulmod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

pub(crate) fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub(crate) fn mul(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, q)) % q;
        }
    }
    out
}

/// Remainder of `a` by a monic `m` (leading coefficient 1), over `Z/q`.
pub(crate) fn rem_monic(a: &[u64], m: &[u64], q: u64) -> Vec<u64> {
    let d = m.len() - 1;
    let mut r = a.to_vec();
    trim(&mut r);
    while r.len() > d {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - d;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let sub = mulmod(lead, c, q);
                r[shift + i] = (r[shift + i] + q - sub) % q;
            }
        }
        r.pop();
        trim(&mut r);
    }
    r
}

/// Exact quotient of `a` by monic `m` over `Z/q` if the remainder vanishes.
pub(crate) fn div_exact_monic(a: &[u64], m: &[u64], q: u64) -> Option<Vec<u64>> {
    let d = m.len() - 1;
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() <= d {
        return if r.is_empty() { Some(Vec::new()) } else { None };
    }
    let mut quot = vec![0u64; r.len() - d];
    while r.len() > d {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - d;
        quot[shift] = lead;
        for (i, &c) in m.iter().enumerate() {
            let sub = mulmod(lead, c, q);
            r[shift + i] = (r[shift + i] + q - sub) % q;
        }
        r.pop();
        trim(&mut r);
    }
    if r.is_empty() {
        Some(quot)
    } else {
        None
    }
}

/// All monic polynomials of degree `d` over `F_p`, in lexicographic order of
/// `(c0, c1, …, c_{d-1})`.
pub(crate) fn monic_of_degree(p: u64, d: usize) -> impl Iterator<Item = Vec<u64>> {
    let count = p.pow(d as u32);
    (0..count).map(move |mut i| {
        let mut coeffs = vec![0u64; d + 1];
        for j in (0..d).rev() {
            coeffs[j] = i % p;
            i /= p;
        }
        coeffs[d] = 1;
        coeffs
    })
}

/// Trial factorization: no monic factor of degree `1..=deg/2`.
pub(crate) fn is_irreducible(g: &[u64], p: u64) -> bool {
    let deg = g.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        for h in monic_of_degree(p, d) {
            if div_exact_monic(g, &h, p).is_some() {
                return false;
            }
        }
    }
    true
}

/// Lowest-degree monic factor of `g` over `F_p`; it is irreducible by
/// minimality.
pub(crate) fn smallest_factor(g: &[u64], p: u64) -> Vec<u64> {
    let deg = g.len() - 1;
    for d in 1..=deg {
        for h in monic_of_degree(p, d) {
            if div_exact_monic(g, &h, p).is_some() {
                return h;
            }
        }
    }
    g.to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn remainder_and_division() {
        // (x^2 + 1)(x + 2) = x^3 + 2x^2 + x + 2 over F_3
        let prod = mul(&[1, 0, 1], &[2, 1], 3);
        assert_eq!(prod, vec![2, 1, 2, 1]);
        assert_eq!(div_exact_monic(&prod, &[2, 1], 3), Some(vec![1, 0, 1]));
        assert!(rem_monic(&prod, &[1, 0, 1], 3).is_empty());
        assert_eq!(div_exact_monic(&prod, &[1, 1], 3), None);
    }

    #[test]
    fn irreducibility_by_trial() {
        assert!(is_irreducible(&[1, 0, 1], 3));
        assert!(!is_irreducible(&[1, 0, 1], 5)); // 2^2 = -1 mod 5
        assert!(is_irreducible(&[3, 0, 1], 5));
        assert_eq!(smallest_factor(&[0, 0, 1], 3), vec![0, 1]);
    }
}
