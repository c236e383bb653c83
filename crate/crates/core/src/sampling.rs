use rand::Rng;

/// Tuples of length `len` over `members`: all of them when there are at
/// most `exhaustive_limit`, otherwise `samples` drawn uniformly.
pub fn prefix_tuples(
    members: &[usize],
    len: usize,
    exhaustive_limit: u128,
    samples: usize,
    rng: &mut impl Rng,
) -> Vec<Vec<usize>> {
    if members.is_empty() {
        return Vec::new();
    }
    let total = (0..len).try_fold(1u128, |acc, _| acc.checked_mul(members.len() as u128));
    match total {
        Some(total) if total <= exhaustive_limit => {
            let mut out = Vec::with_capacity(total as usize);
            let mut digits = vec![0usize; len];
            loop {
                out.push(digits.iter().map(|&d| members[d]).collect());
                let mut pos = len;
                loop {
                    if pos == 0 {
                        return out;
                    }
                    pos -= 1;
                    digits[pos] += 1;
                    if digits[pos] < members.len() {
                        break;
                    }
                    digits[pos] = 0;
                }
            }
        }
        _ => (0..samples)
            .map(|_| (0..len).map(|_| members[rng.gen_range(0..members.len())]).collect())
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn exhaustive_and_sampled() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let all = prefix_tuples(&[3, 5], 3, 64, 10, &mut rng);
        assert_eq!(all.len(), 8);
        assert_eq!(all[0], vec![3, 3, 3]);
        assert_eq!(all[7], vec![5, 5, 5]);
        let sampled = prefix_tuples(&[1, 2, 3], 10, 64, 10, &mut rng);
        assert_eq!(sampled.len(), 10);
        assert!(sampled.iter().all(|t| t.len() == 10));
        let empty_prefix = prefix_tuples(&[1, 2], 0, 64, 10, &mut rng);
        assert_eq!(empty_prefix, vec![Vec::<usize>::new()]);
    }
}
