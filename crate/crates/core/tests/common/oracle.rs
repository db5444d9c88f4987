//! Straight transcription of the dimension definition, used to check the
//! optimized search. Every quantifier is a plain loop over `D` (restricted
//! to the pairs it ranges over), nothing is reordered or pruned, and the
//! first counterexample in lexicographic order is returned.

use contalg_core::ContactAlgebra;

/// `None` when `dim_a(D; ⟨B, ρ⟩) ≤ n` holds, otherwise the first `(a, b)`.
pub fn naive_dim_leq(ca: &ContactAlgebra, d: &[u64], n: i64) -> Option<(Vec<u64>, Vec<u64>)> {
    let top = ca.algebra().top();
    if n == -1 {
        return if ca.algebra().size() == 1 {
            None
        } else {
            Some((vec![], vec![]))
        };
    }
    let k = (n + 2) as usize;
    let ll = |x: u64, y: u64| !ca.contact_bits(x, !y & top);

    let mut a_idx = vec![0usize; k];
    loop {
        let a: Vec<u64> = a_idx.iter().map(|&i| d[i]).collect();
        // b_i ranges over elements of D with b_i ≪ a_i.
        let b_lists: Vec<Vec<u64>> = a
            .iter()
            .map(|&ai| d.iter().copied().filter(|&b| ll(b, ai)).collect())
            .collect();
        let mut witness: Option<bool> = None;
        let mut b_idx = vec![0usize; k];
        if b_lists.iter().all(|l| !l.is_empty()) {
            loop {
                let b: Vec<u64> = b_idx.iter().zip(&b_lists).map(|(&i, l)| l[i]).collect();
                if b.iter().fold(0, |acc, x| acc | x) == top {
                    let ok = *witness.get_or_insert_with(|| exists_witness(ca, d, &a));
                    if !ok {
                        return Some((a, b));
                    }
                }
                if !advance(&mut b_idx, &b_lists.iter().map(Vec::len).collect::<Vec<_>>()) {
                    break;
                }
            }
        }
        if !advance(&mut a_idx, &vec![d.len(); k]) {
            return None;
        }
    }
}

/// Some `c_i ≪ d_i ≪ a_i` in `D` with `⋁ c = 1` and `⋀ d = 0`.
fn exists_witness(ca: &ContactAlgebra, d: &[u64], a: &[u64]) -> bool {
    let top = ca.algebra().top();
    let ll = |x: u64, y: u64| !ca.contact_bits(x, !y & top);
    let lists: Vec<Vec<(u64, u64)>> = a
        .iter()
        .map(|&ai| {
            let mut out = Vec::new();
            for &dd in d {
                if !ll(dd, ai) {
                    continue;
                }
                for &c in d {
                    if ll(c, dd) {
                        out.push((c, dd));
                    }
                }
            }
            out
        })
        .collect();
    if lists.iter().any(Vec::is_empty) {
        return false;
    }
    let lens: Vec<usize> = lists.iter().map(Vec::len).collect();
    let mut idx = vec![0usize; a.len()];
    loop {
        let join = idx.iter().zip(&lists).fold(0, |acc, (&i, l)| acc | l[i].0);
        let meet = idx.iter().zip(&lists).fold(top, |acc, (&i, l)| acc & l[i].1);
        if join == top && meet == 0 {
            return true;
        }
        if !advance(&mut idx, &lens) {
            return false;
        }
    }
}

/// Odometer step with the last position fastest, so tuples come out in
/// lexicographic order. `false` after the last tuple.
fn advance(idx: &mut [usize], lens: &[usize]) -> bool {
    for pos in (0..idx.len()).rev() {
        idx[pos] += 1;
        if idx[pos] < lens[pos] {
            return true;
        }
        idx[pos] = 0;
    }
    false
}
