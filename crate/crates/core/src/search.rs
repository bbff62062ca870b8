//! Exhaustive enumeration of sub-homaloidal multiplicity sets and the
//! closed classification of homaloidal types with multiplicities 8, 4, 2.

use crate::typecalc::{self, format_runs, HudsonTrace, MultiplicityType, TypeError, Verdict};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchEntry {
    /// Non-increasing positive multiplicities.
    pub mults: Vec<i64>,
    pub three_uniform: bool,
    /// Hudson verdict of `(2s−1; 2μ)`, filled by [`filter_proper_double`].
    pub double_verdict: Option<Verdict>,
    pub hudson_trace: Option<HudsonTrace>,
}

impl SearchEntry {
    pub fn literal(&self) -> String {
        format_runs(&self.mults)
    }

    pub fn as_type(&self, s: i64) -> MultiplicityType {
        MultiplicityType::new(s, self.mults.clone()).expect("positive multiplicities")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub degree: i64,
    pub max_mult: i64,
    pub entries: Vec<SearchEntry>,
    pub note: Option<String>,
}

impl SearchResult {
    pub fn literals(&self) -> Vec<String> {
        self.entries.iter().map(SearchEntry::literal).collect()
    }

    pub fn three_uniform_only(&self) -> SearchResult {
        SearchResult {
            entries: self
                .entries
                .iter()
                .filter(|e| e.three_uniform)
                .cloned()
                .collect(),
            ..self.clone()
        }
    }
}

/// All non-increasing sequences of positive integers `≤ max_mult` with
/// `Σμ = 3(s−1)` and `Σμ² = s(s−1)`, in descending lexicographic order.
pub fn enumerate_subhomaloidal(s: i64, max_mult: Option<i64>) -> Result<SearchResult, TypeError> {
    let max_mult = max_mult.unwrap_or(s - 1);
    if s < 2 {
        return Ok(SearchResult {
            degree: s,
            max_mult,
            entries: Vec::new(),
            note: Some(format!("no sub-homaloidal sets in degree {s} < 2")),
        });
    }
    let sum = (s - 1)
        .checked_mul(3)
        .ok_or(TypeError::Overflow("target sum"))?;
    let sq = s
        .checked_mul(s - 1)
        .ok_or(TypeError::Overflow("target square sum"))?;
    let mut found = Vec::new();
    let mut prefix = Vec::new();
    backtrack(sum, sq, max_mult.min(sum), &mut prefix, &mut found);
    found.sort_by(|a, b| b.cmp(a));
    let note = (s % 2 == 0).then(|| {
        format!(
            "s = {s} is even; {} solutions found (sub-homaloidal degrees are odd)",
            found.len()
        )
    });
    let entries = found
        .into_iter()
        .map(|mults| {
            let three_uniform = mults.len() >= 3 && mults[..3].iter().all(|&m| 2 * m == s - 1);
            SearchEntry {
                mults,
                three_uniform,
                double_verdict: None,
                hudson_trace: None,
            }
        })
        .collect();
    Ok(SearchResult {
        degree: s,
        max_mult,
        entries,
        note,
    })
}

fn backtrack(sum: i64, sq: i64, cap: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if sum == 0 {
        if sq == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    // With positive parts ≤ cap summing to `sum`: sum ≤ Σ² ≤ cap·sum.
    if sq < sum || sq > cap * sum {
        return;
    }
    for m in (1..=cap.min(sum)).rev() {
        if m * m > sq {
            continue;
        }
        prefix.push(m);
        backtrack(sum - m, sq - m * m, m, prefix, out);
        prefix.pop();
    }
}

/// Keeps entries whose doubled type is Hudson-proper; non-terminating
/// traces are kept and flagged.
pub fn filter_proper_double(result: &SearchResult) -> Result<SearchResult, TypeError> {
    let mut entries = Vec::new();
    for entry in &result.entries {
        let doubled = typecalc::double(&entry.as_type(result.degree))?;
        let trace = typecalc::hudson_test(&doubled, HudsonTrace::default_step_limit(&doubled))?;
        if matches!(trace.verdict, Verdict::Improper { .. }) {
            continue;
        }
        entries.push(SearchEntry {
            double_verdict: Some(trace.verdict),
            hudson_trace: Some(trace),
            ..entry.clone()
        });
    }
    Ok(SearchResult {
        entries,
        ..result.clone()
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row842 {
    pub degree: i64,
    pub r8: i64,
    pub r4: i64,
    pub r2: i64,
    pub homaloidal_type: MultiplicityType,
    pub verdict: Verdict,
}

/// Homaloidal types `(d; 8^{r8}, 4^{r4}, 2^{r2})` with `5 ≤ d ≤ d_max`,
/// `d ≡ 1 (mod 4)`, ordered by degree then `r8`.
pub fn classify_842(d_max: i64) -> Result<Vec<Row842>, TypeError> {
    let mut rows = Vec::new();
    let mut d = 5;
    while d <= d_max {
        let sum = 3 * (d - 1);
        let sq = d * d - 1;
        for r8 in 0..=sum / 8 {
            for r4 in 0..=(sum - 8 * r8) / 4 {
                let rest = sum - 8 * r8 - 4 * r4;
                if rest % 2 != 0 {
                    continue;
                }
                let r2 = rest / 2;
                if 64 * r8 + 16 * r4 + 4 * r2 != sq {
                    continue;
                }
                let mut mults = vec![8; r8 as usize];
                mults.extend(std::iter::repeat_n(4, r4 as usize));
                mults.extend(std::iter::repeat_n(2, r2 as usize));
                let t = MultiplicityType::new(d, mults)?;
                let trace = typecalc::hudson_test(&t, HudsonTrace::default_step_limit(&t))?;
                rows.push(Row842 {
                    degree: d,
                    r8,
                    r4,
                    r2,
                    homaloidal_type: t,
                    verdict: trace.verdict,
                });
            }
        }
        d += 4;
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_degrees() {
        assert_eq!(
            enumerate_subhomaloidal(5, None).unwrap().literals(),
            ["3,2,1^7", "2^4,1^4"]
        );
        assert_eq!(
            enumerate_subhomaloidal(3, None).unwrap().literals(),
            ["1^6"]
        );
        let seven = enumerate_subhomaloidal(7, None)
            .unwrap()
            .three_uniform_only();
        assert_eq!(seven.literals(), ["3^4,1^6", "3^3,2^3,1^3"]);
    }

    #[test]
    fn even_degrees_are_empty_with_a_note() {
        for s in [2, 4, 6, 8, 10] {
            let r = enumerate_subhomaloidal(s, None).unwrap();
            assert!(r.entries.is_empty(), "s = {s}");
            assert!(r.note.is_some());
        }
    }

    #[test]
    fn max_mult_restricts() {
        let r = enumerate_subhomaloidal(5, Some(2)).unwrap();
        assert_eq!(r.literals(), ["2^4,1^4"]);
    }

    #[test]
    fn proper_doubles() {
        let five = filter_proper_double(&enumerate_subhomaloidal(5, None).unwrap()).unwrap();
        assert_eq!(five.literals(), ["2^4,1^4"]);
        assert_eq!(five.entries[0].double_verdict, Some(Verdict::Proper));

        let three = filter_proper_double(&enumerate_subhomaloidal(3, None).unwrap()).unwrap();
        assert_eq!(three.literals(), ["1^6"]);

        let seven = filter_proper_double(&enumerate_subhomaloidal(7, None).unwrap()).unwrap();
        assert!(seven.literals().contains(&"3^4,1^6".to_string()));
        assert!(!seven.literals().contains(&"4,2^6,1^2".to_string()));
    }

    #[test]
    fn doubled_five_fails_at_first_step() {
        let t = typecalc::parse_literal("9;6,4,2^7").unwrap();
        let tr = typecalc::hudson_test(&t, 90).unwrap();
        assert_eq!(tr.steps.len(), 1);
        assert!(matches!(tr.verdict, Verdict::Improper { .. }));
    }

    #[test]
    fn eight_four_two() {
        let rows = classify_842(40).unwrap();
        let got: Vec<(String, &str)> = rows
            .iter()
            .map(|r| (r.homaloidal_type.to_string(), r.verdict.label()))
            .collect();
        assert_eq!(
            got,
            [
                ("5;2^6".to_string(), "proper"),
                ("9;4^4,2^4".to_string(), "proper"),
                ("13;8,4^6,2^2".to_string(), "improper"),
                ("13;8^2,2^10".to_string(), "improper"),
                ("17;8^3,4^6".to_string(), "proper"),
                ("17;8^4,2^8".to_string(), "proper"),
            ]
        );
        assert_eq!(classify_842(17).unwrap(), rows);
        assert_eq!(classify_842(101).unwrap(), rows);
    }
}
