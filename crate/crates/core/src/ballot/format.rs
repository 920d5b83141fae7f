//! The grouped profile text format.
//!
//! ```text
//! # comment
//! 2 x 0 > 2 > 1
//! 1 > 2 > 0
//! ```
//!
//! Each data line is `[k x] c0 > c1 > ... > c(m-1)`; `k` defaults to 1 and
//! the line expands in place into `k` identical voters. `m` is inferred.

use super::{Candidate, Profile, ProfileError, Ranking};
use std::fmt::Write;

pub fn parse_profile(text: &str) -> Result<Profile, ProfileError> {
    let mut voters: Vec<Ranking> = Vec::new();
    let mut expected_m: Option<(usize, usize)> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| ProfileError::Parse {
            line: line_no,
            message,
        };
        let (count, body) = match line.split_once(['x', 'X']) {
            Some((k, rest)) => {
                let k = k.trim();
                let count: i64 = k
                    .parse()
                    .map_err(|_| err(format!("invalid multiplicity {k:?}")))?;
                if count <= 0 {
                    return Err(err(format!("multiplicity must be positive, got {count}")));
                }
                (count as usize, rest)
            }
            None => (1, line),
        };
        let order = body
            .split('>')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<usize>()
                    .map(Candidate::new)
                    .map_err(|_| err(format!("invalid candidate {tok:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let ranking = Ranking::new(order).map_err(|e| err(e.to_string()))?;
        match expected_m {
            None => expected_m = Some((ranking.len(), line_no)),
            Some((m, first)) if m != ranking.len() => {
                return Err(err(format!(
                    "ranking has {} candidates but line {first} has {m}",
                    ranking.len()
                )));
            }
            Some(_) => {}
        }
        voters.extend(std::iter::repeat_n(ranking, count));
    }
    Profile::new(voters)
}

/// Writes `p` in the text format. Ungrouped output has one line per voter;
/// grouped output collapses runs of consecutive identical rankings into
/// `k x ranking` lines, so both modes preserve voter order.
pub fn serialize_profile(p: &Profile, grouped: bool) -> String {
    let mut out = String::new();
    if !grouped {
        for r in p.voters() {
            writeln!(out, "{r}").unwrap();
        }
        return out;
    }
    let voters = p.voters();
    let mut start = 0;
    while start < voters.len() {
        let end = start
            + voters[start..]
                .iter()
                .take_while(|r| **r == voters[start])
                .count();
        writeln!(out, "{} x {}", end - start, voters[start]).unwrap();
        start = end;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ballot::random_profile;

    const SEC42_P: &str = "\
0 > 2 > 1
0 > 2 > 1
1 > 2 > 0
1 > 2 > 0
2 > 0 > 1
2 > 1 > 0
";

    #[test]
    fn single_identity_line() {
        let p = parse_profile("1 x 0 > 1 > 2").unwrap();
        assert_eq!(p.num_candidates(), 3);
        assert_eq!(p.num_voters(), 1);
        assert_eq!(p.voter(0), &Ranking::identity(3));
    }

    #[test]
    fn six_column_table() {
        let p = parse_profile(SEC42_P).unwrap();
        let expected = Profile::from_groups(&[
            (2, &[0, 2, 1]),
            (2, &[1, 2, 0]),
            (1, &[2, 0, 1]),
            (1, &[2, 1, 0]),
        ])
        .unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn comments_blank_lines_and_spacing() {
        let text = "# header\n\n  3x0>1 >2   # trailing\n\t1 X 2 > 1 > 0\n";
        let p = parse_profile(text).unwrap();
        assert_eq!(p.num_voters(), 4);
        assert_eq!(p.voter(3), &Ranking::from_indices(&[2, 1, 0]).unwrap());
    }

    #[test]
    fn malformed_inputs() {
        let bad = |t: &str| parse_profile(t).unwrap_err();
        assert!(matches!(bad("2 x 0 > 0 > 1"), ProfileError::Parse { line: 1, .. }));
        assert!(matches!(bad("0 > 2"), ProfileError::Parse { .. }));
        assert!(matches!(bad("0 > 1\n0 > 1 > 2"), ProfileError::Parse { line: 2, .. }));
        assert!(matches!(bad("0 x 0 > 1"), ProfileError::Parse { .. }));
        assert!(matches!(bad("-2 x 0 > 1"), ProfileError::Parse { .. }));
        assert!(matches!(bad("a > 1 > 0"), ProfileError::Parse { .. }));
        assert_eq!(bad("# nothing\n\n"), ProfileError::Empty);
        assert_eq!(bad(""), ProfileError::Empty);
    }

    #[test]
    fn serialize_ungrouped() {
        let p = Profile::new(vec![Ranking::identity(3)]).unwrap();
        assert_eq!(serialize_profile(&p, false), "0 > 1 > 2\n");
    }

    #[test]
    fn serialize_grouped_sec42() {
        let p = parse_profile(SEC42_P).unwrap();
        let text = serialize_profile(&p, true);
        let counts: Vec<&str> = text.lines().map(|l| l.split(" x ").next().unwrap()).collect();
        assert_eq!(counts, ["2", "2", "1", "1"]);
        assert_eq!(parse_profile(&text).unwrap(), p);
    }

    #[test]
    fn round_trip_seeded() {
        for seed in 0..100 {
            let p = random_profile(1 + (seed as usize % 6), 1 + (seed as usize % 13), seed);
            assert_eq!(parse_profile(&serialize_profile(&p, false)).unwrap(), p);
            assert_eq!(parse_profile(&serialize_profile(&p, true)).unwrap(), p);
        }
    }
}
