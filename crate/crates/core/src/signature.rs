//! Planar signatures `(0; m₁,…,m_r)` and the Riemann–Hurwitz solver.
//!
//! All arithmetic is exact: genera and period sums are rationals over `i64`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::SignatureError;

pub type Rational = Ratio<i64>;

/// Periods `m₁ ≤ … ≤ m_r` of a hyperbolic planar signature, together with the
/// boundaries of its maximal runs of equal periods.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature {
    periods: Vec<u32>,
    blocks: Vec<usize>,
}

impl Signature {
    pub fn new(periods: Vec<u32>) -> Result<Signature, SignatureError> {
        if periods.len() < 3 {
            return Err(SignatureError::TooFewPeriods(periods.len()));
        }
        if let Some(&m) = periods.iter().find(|&&m| m < 2) {
            return Err(SignatureError::PeriodTooSmall(m));
        }
        if periods.windows(2).any(|w| w[0] > w[1]) {
            return Err(SignatureError::NotSorted);
        }
        if !is_hyperbolic(&periods) {
            return Err(SignatureError::NotHyperbolic);
        }
        let mut blocks = vec![0];
        for i in 1..periods.len() {
            if periods[i] != periods[i - 1] {
                blocks.push(i);
            }
        }
        blocks.push(periods.len());
        Ok(Signature { periods, blocks })
    }

    pub fn periods(&self) -> &[u32] {
        &self.periods
    }

    /// Number of branch points `r`.
    pub fn len(&self) -> usize {
        self.periods.len()
    }

    pub fn is_empty(&self) -> bool {
        self.periods.is_empty()
    }

    /// Block boundaries `0 = r₀ < r₁ < … < r_ℓ = r`.
    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    /// Whether the 1-based positions `i` and `i + 1` lie in the same block.
    pub fn same_period_at(&self, i: usize) -> bool {
        i >= 1 && i < self.periods.len() && self.periods[i - 1] == self.periods[i]
    }

    pub fn has_distinct_periods(&self) -> bool {
        self.blocks.len() == self.periods.len() + 1
    }

    /// `Σ (1 − 1/mᵢ)`.
    pub fn branching_sum(&self) -> Rational {
        self.periods
            .iter()
            .map(|&m| Rational::new(m as i64 - 1, m as i64))
            .sum()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0;")?;
        for (i, m) in self.periods.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl FromStr for Signature {
    type Err = SignatureError;

    /// Parses `0;m1,m2,...`, with optional surrounding parentheses.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let syntax = || SignatureError::Syntax(s.to_string());
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (genus, rest) = body.split_once(';').ok_or_else(syntax)?;
        if genus.trim() != "0" {
            return Err(syntax());
        }
        let periods = rest
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| syntax()))
            .collect::<Result<Vec<_>, _>>()?;
        Signature::new(periods)
    }
}

/// `2 + Σ 1/mᵢ < r`.
pub fn is_hyperbolic(periods: &[u32]) -> bool {
    let inverse_sum: Rational = periods.iter().map(|&m| Rational::new(1, m as i64)).sum();
    Rational::from_integer(2) + inverse_sum < Rational::from_integer(periods.len() as i64)
}

/// `84(g − 1)`.
pub fn hurwitz_bound(genus: u64) -> Result<u64, SignatureError> {
    if genus < 2 {
        return Err(SignatureError::GenusTooSmall(genus));
    }
    Ok(84 * (genus - 1))
}

/// The genus `g` with `2 − 2g = n(2 − Σ(1 − 1/mᵢ))`.
pub fn genus_of(sig: &Signature, order: u64) -> Rational {
    genus_of_periods(sig.periods(), order)
}

pub fn genus_of_periods(periods: &[u32], order: u64) -> Rational {
    let sum: Rational = periods
        .iter()
        .map(|&m| Rational::new(m as i64 - 1, m as i64))
        .sum();
    let n = Rational::from_integer(order as i64);
    let euler = n * (Rational::from_integer(2) - sum);
    (Rational::from_integer(2) - euler) / 2
}

/// All planar signatures with periods dividing `order` for which a group of
/// that order acts on genus `genus`, sorted lexicographically.
///
/// With `S = 2 + (2g − 2)/n = Σ(1 − 1/mᵢ)` and every term in `[1/2, 1)`, the
/// number of periods lies in `(S, 2S]`; each length is searched by
/// backtracking over nondecreasing divisors with exact remainders.
pub fn solve_signatures(genus: u64, order: u64) -> Result<Vec<Signature>, SignatureError> {
    hurwitz_bound(genus)?;
    if order < 2 {
        return Ok(Vec::new());
    }
    let target = Rational::from_integer(2) + Rational::new(2 * genus as i64 - 2, order as i64);
    let divisors: Vec<u32> = (2..=order)
        .filter(|&d| order.is_multiple_of(d))
        .map(|d| d as u32)
        .collect();

    let r_min = target.floor().to_integer() + 1;
    let r_max = (target * 2).floor().to_integer();
    let mut out = Vec::new();
    let mut current = Vec::new();
    for r in r_min..=r_max {
        fill(&divisors, 0, r as usize, target, &mut current, &mut out);
    }
    let mut sigs: Vec<Signature> = out
        .into_iter()
        .map(|p| Signature::new(p).expect("solver emits hyperbolic sorted periods"))
        .collect();
    sigs.sort();
    Ok(sigs)
}

fn fill(
    divisors: &[u32],
    start: usize,
    remaining: usize,
    rest: Rational,
    current: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if remaining == 0 {
        if rest == Rational::from_integer(0) {
            out.push(current.clone());
        }
        return;
    }
    let k = remaining as i64;
    for (idx, &d) in divisors.iter().enumerate().skip(start) {
        let term = Rational::new(d as i64 - 1, d as i64);
        // Later terms are at least `term`, so k·term must not overshoot.
        if term * k > rest {
            break;
        }
        // Later terms are each below 1.
        if rest - term >= Rational::from_integer(k - 1) && k > 1 {
            continue;
        }
        if k == 1 && term != rest {
            continue;
        }
        current.push(d);
        fill(divisors, idx, remaining - 1, rest - term, current, out);
        current.pop();
    }
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    (1..=n).filter(|&k| k.gcd(&n) == 1).count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(p: &[u32]) -> Signature {
        Signature::new(p.to_vec()).unwrap()
    }

    #[test]
    fn hurwitz_bounds() {
        assert_eq!(hurwitz_bound(2), Ok(84));
        assert_eq!(hurwitz_bound(3), Ok(168));
        assert_eq!(hurwitz_bound(6), Ok(420));
        assert_eq!(hurwitz_bound(1), Err(SignatureError::GenusTooSmall(1)));
    }

    #[test]
    fn genus_examples() {
        for n in 3..10u32 {
            assert_eq!(
                genus_of(&sig(&[2, 2, n, n]), 2 * n as u64),
                Rational::from_integer(n as i64 - 1)
            );
        }
        assert_eq!(genus_of(&sig(&[2, 3, 7]), 84), Rational::from_integer(2));
        assert_eq!(genus_of(&sig(&[4, 4, 4]), 8), Rational::from_integer(2));
        assert_eq!(genus_of(&sig(&[2, 3, 7]), 42), Rational::new(3, 2));
    }

    #[test]
    fn solver_examples() {
        let show = |g, n| -> Vec<String> {
            solve_signatures(g, n)
                .unwrap()
                .iter()
                .map(|s| s.to_string())
                .collect()
        };
        assert_eq!(show(2, 2), vec!["0;2,2,2,2,2,2"]);
        assert_eq!(show(2, 8), vec!["0;2,2,2,4", "0;2,8,8", "0;4,4,4"]);
        assert_eq!(show(2, 84), vec!["0;2,3,7"]);
        assert!(show(2, 7).is_empty());
        assert!(show(2, 1).is_empty());
        assert!(solve_signatures(1, 4).is_err());
    }

    #[test]
    fn validation() {
        assert_eq!(
            Signature::new(vec![2, 2, 2]),
            Err(SignatureError::NotHyperbolic)
        );
        assert_eq!(
            Signature::new(vec![2, 3, 6]),
            Err(SignatureError::NotHyperbolic)
        );
        assert_eq!(
            Signature::new(vec![2, 2]),
            Err(SignatureError::TooFewPeriods(2))
        );
        assert_eq!(
            Signature::new(vec![3, 2, 7]),
            Err(SignatureError::NotSorted)
        );
        assert_eq!(
            Signature::new(vec![1, 3, 7]),
            Err(SignatureError::PeriodTooSmall(1))
        );
        assert!(Signature::new(vec![2, 3, 7]).is_ok());
    }

    #[test]
    fn blocks_are_maximal_runs() {
        let s = sig(&[2, 2, 3, 5, 5, 5]);
        assert_eq!(s.blocks(), &[0, 2, 3, 6]);
        assert!(s.same_period_at(1));
        assert!(!s.same_period_at(2));
        assert!(s.same_period_at(4));
        assert!(s.same_period_at(5));
        assert!(!s.same_period_at(6));
        assert!(sig(&[2, 3, 7]).has_distinct_periods());
    }

    #[test]
    fn parse_and_display() {
        let s: Signature = "0;2,8,8".parse().unwrap();
        assert_eq!(s.periods(), &[2, 8, 8]);
        assert_eq!(s.to_string(), "0;2,8,8");
        assert_eq!(
            "(0; 2, 3, 7)".parse::<Signature>().unwrap().periods(),
            &[2, 3, 7]
        );
        assert!("1;2,3,7".parse::<Signature>().is_err());
        assert!("0;2,x,7".parse::<Signature>().is_err());
    }

    #[test]
    fn totients() {
        assert_eq!(totient(1), 1);
        assert_eq!(totient(8), 4);
        assert_eq!(totient(12), 4);
        assert_eq!(totient(7), 6);
    }
}
