//! The named sign twists used to define the A∞ operations and functors,
//! evaluated as parities.

use crate::ainf::dagger;
use crate::error::{Error, Result};

/// Names accepted by [`sign_twist`].
pub const TWIST_NAMES: [&str; 7] = [
    "dagger_morse",
    "dagger_fukaya",
    "dagger_shrub",
    "maltese",
    "ddagger_mushroom",
    "reorient_shrub_1dim",
    "reorient_mushroom_1dim",
];

/// Degree of the cap chain on the inputs `p`: `1 − |p| + Σ deg p`.
pub fn cap_degree(p: &[i64]) -> i64 {
    1 - p.len() as i64 + p.iter().sum::<i64>()
}

/// `†(Π⃗) = Σ_k k·deg P(p⃗[k])`.
pub fn dagger_caps(caps: &[Vec<i64>]) -> i64 {
    dagger(&caps.iter().map(|c| cap_degree(c)).collect::<Vec<_>>())
}

fn arity(name: &str, ok: bool, want: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{name} expects {want}")))
    }
}

/// Evaluate a named sign twist; `true` means the sign is `−1`.
///
/// Arguments are grouped degree lists, each listed `x_1, …, x_d`:
///
/// | name | `groups` | exponent |
/// |---|---|---|
/// | `dagger_morse`, `dagger_fukaya`, `dagger_shrub` | `[x⃗]` | `Σ k·deg x_k` |
/// | `maltese` | `[[k], p⃗]` | `k + Σ_{j≤k} deg p_j` |
/// | `ddagger_mushroom` | `[p⃗[1], …, p⃗[r]]` | `(n+1)†(Π⃗) + Σ †(p⃗[k])` |
/// | `reorient_shrub_1dim` | `[[r], σ⃗]` | `(n+1)(r + †(σ⃗))` |
/// | `reorient_mushroom_1dim` | `[p⃗[1], …, p⃗[r]]` | `(n+1)(r + †(Π⃗)) + Σ (1 + †(p⃗[k]) + d_k deg p⃗[k])` |
pub fn sign_twist(name: &str, n: i64, groups: &[Vec<i64>]) -> Result<bool> {
    let value = match name {
        "dagger_morse" | "dagger_fukaya" | "dagger_shrub" => {
            arity(name, groups.len() == 1, "one degree list")?;
            dagger(&groups[0])
        }
        "maltese" => {
            arity(name, groups.len() == 2 && groups[0].len() == 1, "[[k], degrees]")?;
            let k = groups[0][0];
            arity(
                name,
                k >= 0 && k as usize <= groups[1].len(),
                "0 ≤ k ≤ number of degrees",
            )?;
            k + groups[1][..k as usize].iter().sum::<i64>()
        }
        "ddagger_mushroom" => {
            arity(name, groups.iter().all(|g| !g.is_empty()), "non-empty caps")?;
            (n + 1) * dagger_caps(groups) + groups.iter().map(|g| dagger(g)).sum::<i64>()
        }
        "reorient_shrub_1dim" => {
            arity(name, groups.len() == 2 && groups[0].len() == 1, "[[r], degrees]")?;
            (n + 1) * (groups[0][0] + dagger(&groups[1]))
        }
        "reorient_mushroom_1dim" => {
            arity(name, groups.iter().all(|g| !g.is_empty()), "non-empty caps")?;
            let r = groups.len() as i64;
            (n + 1) * (r + dagger_caps(groups))
                + groups
                    .iter()
                    .map(|g| 1 + dagger(g) + g.len() as i64 * g.iter().sum::<i64>())
                    .sum::<i64>()
        }
        _ => return Err(Error::InvalidArgument(format!("unknown sign twist {name:?}"))),
    };
    Ok(value.rem_euclid(2) == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_values() {
        assert!(!sign_twist("maltese", 0, &[vec![2], vec![1, 3]]).unwrap());
        assert!(sign_twist("dagger_morse", 0, &[vec![1, 0, 2]]).unwrap());
        assert!(!sign_twist("dagger_fukaya", 0, &[vec![]]).unwrap());
        assert!(!sign_twist("dagger_fukaya", 0, &[vec![0, 0]]).unwrap());
        // (n+1)(r + †σ⃗) with n = 0, r = 1, σ⃗ = (1): 1 + 1.
        assert!(!sign_twist("reorient_shrub_1dim", 0, &[vec![1], vec![1]]).unwrap());
        // One cap on a degree-0 input: †Π = 1·0, † = 0; (n+1)(1) + 1 = 2 at n = 0.
        assert!(!sign_twist("reorient_mushroom_1dim", 0, &[vec![0]]).unwrap());
        assert!(sign_twist("reorient_mushroom_1dim", 1, &[vec![0]]).unwrap());
        // Two caps (1), (0): deg P = 1, 0; †Π = 1; Σ† = 1; (n+1)·1 + 1 at n = 0.
        assert!(!sign_twist("ddagger_mushroom", 0, &[vec![1], vec![0]]).unwrap());
    }

    #[test]
    fn bad_arguments() {
        assert!(sign_twist("nonsense", 0, &[]).is_err());
        assert!(sign_twist("dagger_morse", 0, &[vec![], vec![]]).is_err());
        assert!(sign_twist("maltese", 0, &[vec![3], vec![1, 3]]).is_err());
        assert!(sign_twist("ddagger_mushroom", 0, &[vec![]]).is_err());
        for name in TWIST_NAMES {
            let one = sign_twist(name, 0, &[vec![1, 2]]).is_ok();
            let two = sign_twist(name, 0, &[vec![1], vec![1]]).is_ok();
            assert!(one || two, "{name}");
        }
    }
}
