//! Lyndon words, their standard factorization and the Witt counts.

/// A word over the alphabet `0..q`, letters compared by index.
pub type Word = Vec<usize>;

/// True when `w` is strictly smaller than each of its proper rotations.
pub fn is_lyndon(w: &[usize]) -> bool {
    if w.is_empty() {
        return false;
    }
    (1..w.len()).all(|i| {
        let rot: Vec<usize> = w[i..].iter().chain(&w[..i]).copied().collect();
        w < rot.as_slice()
    })
}

/// All Lyndon words of length at most `n` over `q` letters, in lexicographic
/// order (Duval's generation algorithm).
pub fn lyndon_words(q: usize, n: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if q == 0 || n == 0 {
        return out;
    }
    let mut w = vec![0usize];
    loop {
        out.push(w.clone());
        let m = w.len();
        while w.len() < n {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&(q - 1)) {
            w.pop();
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out
}

/// Lyndon words grouped by length: entry `l - 1` holds the words of length `l`.
pub fn lyndon_by_length(q: usize, n: usize) -> Vec<Vec<Word>> {
    let mut out = vec![Vec::new(); n];
    for w in lyndon_words(q, n) {
        out[w.len() - 1].push(w);
    }
    out
}

/// Right standard factorization `w = u v`, `v` the longest proper Lyndon
/// suffix. `None` for letters.
pub fn standard_factorization(w: &[usize]) -> Option<(&[usize], &[usize])> {
    (1..w.len())
        .find(|&i| is_lyndon(&w[i..]))
        .map(|i| w.split_at(i))
}

/// The bracketing of a Lyndon word, e.g. `[a,[a,b]]`.
pub fn bracketing(w: &[usize], names: &[String]) -> String {
    match standard_factorization(w) {
        None => names[w[0]].clone(),
        Some((u, v)) => format!("[{},{}]", bracketing(u, names), bracketing(v, names)),
    }
}

/// The word spelled out, letters joined when every name is one character.
pub fn spell(w: &[usize], names: &[String]) -> String {
    let sep = if names.iter().all(|n| n.chars().count() == 1) {
        ""
    } else {
        "."
    };
    w.iter()
        .map(|&i| names[i].as_str())
        .collect::<Vec<_>>()
        .join(sep)
}

fn mobius(mut n: usize) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// `(1/n) sum_{d | n} mu(d) q^{n/d}`, the dimension of the length-`n` part
/// of the free Lie algebra on `q` letters.
pub fn witt_count(q: usize, n: usize) -> u128 {
    if n == 0 {
        return 0;
    }
    let total: i128 = (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| mobius(d) as i128 * (q as i128).pow((n / d) as u32))
        .sum();
    (total / n as i128) as u128
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(q: usize, n: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut stack: Vec<Word> = (0..q).map(|a| vec![a]).collect();
        while let Some(w) = stack.pop() {
            if is_lyndon(&w) {
                out.push(w.clone());
            }
            if w.len() < n {
                stack.extend((0..q).map(|a| {
                    let mut x = w.clone();
                    x.push(a);
                    x
                }));
            }
        }
        out.sort();
        out
    }

    #[test]
    fn generation_matches_brute_force_and_witt() {
        for q in 1..=3 {
            for n in 1..=6 {
                let words = lyndon_words(q, n);
                assert_eq!(words, brute_force(q, n));
                let by_len = lyndon_by_length(q, n);
                for (l, ws) in by_len.iter().enumerate() {
                    assert_eq!(ws.len() as u128, witt_count(q, l + 1), "q={q} l={}", l + 1);
                }
            }
        }
        let counts: Vec<usize> = lyndon_by_length(2, 5).iter().map(Vec::len).collect();
        assert_eq!(counts, vec![2, 1, 2, 3, 6]);
        assert_eq!(lyndon_words(1, 4), vec![vec![0]]);
    }

    #[test]
    fn factorization_and_bracketing() {
        let names: Vec<String> = ["a", "b"].iter().map(|s| s.to_string()).collect();
        assert_eq!(bracketing(&[0, 0, 1], &names), "[a,[a,b]]");
        assert_eq!(bracketing(&[0, 1, 1], &names), "[[a,b],b]");
        assert_eq!(bracketing(&[0, 0, 1, 0, 1], &names), "[[a,[a,b]],[a,b]]");
        assert_eq!(
            standard_factorization(&[0, 0, 1, 0, 1]),
            Some((&[0, 0, 1][..], &[0, 1][..]))
        );
        assert_eq!(spell(&[0, 1, 1], &names), "abb");
    }
}
