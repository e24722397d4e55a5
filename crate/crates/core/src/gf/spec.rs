//! Field spec strings and prime-field modulus search.

use super::{Field, GfError};

/// Parses `p^m:poly`. A bare prime `p` means GF(p).
pub(super) fn parse_field_spec(s: &str) -> Result<Field, GfError> {
    let err = |msg: &str| GfError::Parse(s.to_string(), msg.to_string());
    let s_trim = s.trim();
    let (head, poly) = match s_trim.split_once(':') {
        Some((h, p)) => (h.trim(), Some(p.trim())),
        None => (s_trim, None),
    };
    let (p, m) = match head.split_once('^') {
        Some((p, m)) => (
            p.trim().parse::<u64>().map_err(|_| err("bad characteristic"))?,
            m.trim().parse::<u32>().map_err(|_| err("bad extension degree"))?,
        ),
        None => (head.parse::<u64>().map_err(|_| err("bad characteristic"))?, 1),
    };
    match poly {
        Some(poly) => {
            let coeffs = parse_int_poly(poly).map_err(|e| err(&e))?;
            if coeffs.len() != m as usize + 1 {
                return Err(err("modulus degree does not match m"));
            }
            Field::new(p, m, &coeffs)
        }
        None if m == 1 => Field::prime(p),
        None => Field::default_for(p, m),
    }
}

/// Parses a univariate polynomial in `x` with integer coefficients, e.g.
/// `x^4+x+1`, `x^2-x-1`, `3x^2+2*x+7`. Returns coefficients constant-first.
pub fn parse_int_poly(s: &str) -> Result<Vec<i64>, String> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty polynomial".into());
    }
    let bytes = s.as_bytes();
    let mut i = 0;
    let mut terms: Vec<(i64, usize)> = Vec::new();
    while i < bytes.len() {
        let mut sign = 1i64;
        if bytes[i] == b'+' || bytes[i] == b'-' {
            if bytes[i] == b'-' {
                sign = -1;
            }
            i += 1;
        } else if !terms.is_empty() {
            return Err(format!("expected '+' or '-' at offset {i}"));
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let coef: Option<i64> = if i > start {
            Some(s[start..i].parse().map_err(|_| "coefficient overflow".to_string())?)
        } else {
            None
        };
        if i < bytes.len() && bytes[i] == b'*' {
            i += 1;
        }
        let mut exp = 0usize;
        if i < bytes.len() && bytes[i] == b'x' {
            i += 1;
            exp = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let st = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if st == i {
                    return Err("missing exponent".into());
                }
                exp = s[st..i].parse().map_err(|_| "bad exponent".to_string())?;
            }
        } else if coef.is_none() {
            return Err(format!("unexpected character at offset {i}"));
        }
        terms.push((sign * coef.unwrap_or(1), exp));
    }
    let deg = terms.iter().map(|t| t.1).max().unwrap_or(0);
    let mut out = vec![0i64; deg + 1];
    for (c, e) in terms {
        out[e] += c;
    }
    Ok(out)
}

/// Renders constant-first integer coefficients as `x^4+x+1`.
pub fn format_int_poly(coeffs: &[u64], var: &str) -> String {
    let mut parts = Vec::new();
    for (e, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match e {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{e}"),
        };
        parts.push(match (c, e) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}{mono}"),
        });
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

// Prime-field polynomial helpers, constant-first, no trailing zeros.

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db], p);
    while r.len() > db {
        let dr = r.len() - 1;
        let c = r[dr] * lead_inv % p;
        for (k, &bk) in b.iter().enumerate() {
            let idx = dr - db + k;
            r[idx] = (r[idx] + (p - c) * bk % p) % p;
        }
        r = trim(r);
    }
    r
}

fn mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    rem(&prod, f, p)
}

fn pow_mod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &b, f, p);
        }
        b = mul_mod(&b, &b, f, p);
        e >>= 1;
    }
    acc
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn mod_inv(a: u64, p: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Trial division by every monic polynomial of degree `1..=m/2`.
pub(super) fn irreducible_by_trial_division(p: u64, modulus: &[u64]) -> bool {
    let m = modulus.len() - 1;
    for d in 1..=m / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut x = idx;
            for _ in 0..d {
                g.push(x % p);
                x /= p;
            }
            g.push(1);
            if rem(modulus, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Rabin's irreducibility test over GF(p).
pub(crate) fn rabin_irreducible(p: u64, f: &[u64]) -> bool {
    let n = f.len() - 1;
    if n == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let frob_iter = |k: usize| {
        let mut cur = x.clone();
        for _ in 0..k {
            cur = pow_mod(&cur, p, f, p);
        }
        cur
    };
    let full = frob_iter(n);
    if trim(full) != x {
        return false;
    }
    let mut n_rest = n;
    let mut r = 2;
    let mut primes = Vec::new();
    while r * r <= n_rest {
        if n_rest.is_multiple_of(r) {
            primes.push(r);
            while n_rest.is_multiple_of(r) {
                n_rest /= r;
            }
        }
        r += 1;
    }
    if n_rest > 1 {
        primes.push(n_rest);
    }
    for r in primes {
        let mut h = frob_iter(n / r);
        h.resize(h.len().max(2), 0);
        h[1] = (h[1] + p - 1) % p;
        let g = gcd(f, &trim(h), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Smallest monic irreducible polynomial of degree `m` over GF(p), by
/// canonical encoding of the lower coefficients.
pub(super) fn smallest_irreducible(p: u64, m: u32) -> Vec<u64> {
    if m == 1 {
        return vec![p - 1, 1];
    }
    let m = m as usize;
    let mut idx: u64 = 0;
    loop {
        let mut f = Vec::with_capacity(m + 1);
        let mut x = idx;
        for _ in 0..m {
            f.push(x % p);
            x /= p;
        }
        f.push(1);
        if f[0] != 0 && rabin_irreducible(p, &f) {
            return f;
        }
        idx += 1;
    }
}
