use std::fmt::Write as _;
use std::ops::RangeInclusive;

use num_bigint::BigInt;

use crate::OeisError;

/// A parsed OEIS b-file: consecutive terms starting at `offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFileSequence {
    pub oeis_id: String,
    pub offset: i64,
    pub terms: Vec<BigInt>,
}

impl BFileSequence {
    /// Parses b-file text: `#` lines and blank lines are skipped, data
    /// lines are `<index> <value>` with consecutive indices. Line numbers
    /// in errors are 1-based over the raw text.
    pub fn parse(oeis_id: &str, text: &str) -> Result<Self, OeisError> {
        let fail = |line: usize, message: String| OeisError::Parse {
            id: oeis_id.to_string(),
            line,
            message,
        };
        let mut offset = None;
        let mut terms: Vec<BigInt> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split_whitespace();
            let index_text = fields.next().expect("non-empty line has a field");
            let value_text = fields
                .next()
                .ok_or_else(|| fail(line_no, "missing value field".into()))?;
            if fields.next().is_some() {
                return Err(fail(line_no, "more than two fields".into()));
            }
            let index: i64 = index_text
                .parse()
                .map_err(|_| fail(line_no, format!("bad index {index_text:?}")))?;
            let value: BigInt = value_text
                .parse()
                .map_err(|_| fail(line_no, format!("bad value {value_text:?}")))?;
            match offset {
                None => offset = Some(index),
                Some(first) => {
                    let expected = first + terms.len() as i64;
                    if index != expected {
                        return Err(fail(
                            line_no,
                            format!("index {index} out of order, expected {expected}"),
                        ));
                    }
                }
            }
            terms.push(value);
        }
        let offset = offset.ok_or_else(|| fail(text.lines().count(), "no data lines".into()))?;
        Ok(BFileSequence {
            oeis_id: oeis_id.to_string(),
            offset,
            terms,
        })
    }

    /// Renders the data lines back out (no comments, single spaces); a
    /// parse of the result reproduces this sequence exactly.
    pub fn to_bfile_string(&self) -> String {
        let mut out = String::new();
        for (i, term) in self.terms.iter().enumerate() {
            let _ = writeln!(out, "{} {}", self.offset + i as i64, term);
        }
        out
    }

    /// Term at an absolute OEIS index, if present.
    pub fn term(&self, index: i64) -> Option<&BigInt> {
        let i = index.checked_sub(self.offset)?;
        if i < 0 {
            return None;
        }
        self.terms.get(i as usize)
    }

    pub fn last_index(&self) -> i64 {
        self.offset + self.terms.len() as i64 - 1
    }
}

/// First disagreement between a computed sequence and a b-file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    /// Absolute OEIS index of the disagreeing term.
    pub oeis_index: i64,
    pub computed: BigInt,
    pub expected: BigInt,
}

/// Outcome of matching a computed prefix against b-file data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonReport {
    /// Number of positions where both sides are defined.
    pub compared: usize,
    /// Length of the run of agreeing terms from the first comparable
    /// position.
    pub match_len: usize,
    pub mismatch: Option<Mismatch>,
    /// True when the shift left no comparable positions at all.
    pub insufficient_data: bool,
}

/// Compares `computed[i]` against the b-file term at index `i + shift`.
/// Positions that fall outside the b-file's index range are skipped, so a
/// negative shift simply drops the first few computed entries.
pub fn compare_prefix(computed: &[BigInt], seq: &BFileSequence, shift: i64) -> ComparisonReport {
    let mut compared = 0usize;
    let mut match_len = 0usize;
    let mut mismatch = None;
    for (i, value) in computed.iter().enumerate() {
        let index = i as i64 + shift;
        let Some(expected) = seq.term(index) else {
            continue;
        };
        compared += 1;
        if mismatch.is_none() {
            if value == expected {
                match_len += 1;
            } else {
                mismatch = Some(Mismatch {
                    oeis_index: index,
                    computed: value.clone(),
                    expected: expected.clone(),
                });
            }
        }
    }
    ComparisonReport {
        compared,
        match_len,
        mismatch,
        insufficient_data: compared == 0,
    }
}

/// Tries every shift in the range and keeps the one with the longest
/// matching run; ties go to the shift of smallest absolute value. Meant
/// for exploration, not verification (verification uses frozen shifts).
pub fn best_shift_alignment(
    computed: &[BigInt],
    seq: &BFileSequence,
    shifts: RangeInclusive<i64>,
) -> (i64, ComparisonReport) {
    let mut best: Option<(i64, ComparisonReport)> = None;
    for shift in shifts {
        let report = compare_prefix(computed, seq, shift);
        let better = match &best {
            None => true,
            Some((best_shift, best_report)) => {
                (report.match_len, -shift.abs()) > (best_report.match_len, -best_shift.abs())
            }
        };
        if better {
            best = Some((shift, report));
        }
    }
    best.expect("shift range must be nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(values: &[i64]) -> Vec<BigInt> {
        values.iter().map(|&v| BigInt::from(v)).collect()
    }

    #[test]
    fn parses_plain_data() {
        let seq = BFileSequence::parse("A000337", "0 0\n1 1\n2 5\n3 17\n").unwrap();
        assert_eq!(seq.offset, 0);
        assert_eq!(seq.terms, ints(&[0, 1, 5, 17]));
        assert_eq!(seq.term(2), Some(&BigInt::from(5)));
        assert_eq!(seq.term(-1), None);
        assert_eq!(seq.term(4), None);
        assert_eq!(seq.last_index(), 3);
    }

    #[test]
    fn skips_comments_and_blank_lines_and_extra_spaces() {
        let text = "# header\n\n  1   10\n2 20\n# trailing\n3 30\n";
        let seq = BFileSequence::parse("A999000", text).unwrap();
        assert_eq!(seq.offset, 1);
        assert_eq!(seq.terms, ints(&[10, 20, 30]));
    }

    #[test]
    fn nonzero_and_negative_offsets_and_values() {
        let seq = BFileSequence::parse("A999001", "-2 -7\n-1 0\n0 7\n").unwrap();
        assert_eq!(seq.offset, -2);
        assert_eq!(seq.terms, ints(&[-7, 0, 7]));
    }

    #[test]
    fn parses_values_beyond_machine_width() {
        let big = "123456789012345678901234567890123456789";
        let seq = BFileSequence::parse("A999002", &format!("0 {big}\n")).unwrap();
        assert_eq!(seq.terms[0].to_string(), big);
    }

    #[test]
    fn rejects_malformed_lines() {
        let err = BFileSequence::parse("A999003", "0 1\nnope\n").unwrap_err();
        assert!(matches!(err, OeisError::Parse { line: 2, .. }), "{err}");
        let err = BFileSequence::parse("A999003", "0 1\n1 2 3\n").unwrap_err();
        assert!(matches!(err, OeisError::Parse { line: 2, .. }), "{err}");
        let err = BFileSequence::parse("A999003", "0 0\n2 5\n").unwrap_err();
        assert!(matches!(err, OeisError::Parse { line: 2, .. }), "{err}");
        let err = BFileSequence::parse("A999003", "# only comments\n").unwrap_err();
        assert!(matches!(err, OeisError::Parse { .. }), "{err}");
    }

    #[test]
    fn serialization_round_trips() {
        let text = "# note\n5 100\n6 -200\n7 300\n";
        let seq = BFileSequence::parse("A999004", text).unwrap();
        let rendered = seq.to_bfile_string();
        assert_eq!(rendered, "5 100\n6 -200\n7 300\n");
        assert_eq!(BFileSequence::parse("A999004", &rendered).unwrap(), seq);
    }

    #[test]
    fn prefix_match_counts_the_full_overlap() {
        let seq = BFileSequence::parse("A999005", "0 0\n1 1\n2 5\n3 17\n").unwrap();
        let report = compare_prefix(&ints(&[0, 1, 5, 17]), &seq, 0);
        assert_eq!(report.compared, 4);
        assert_eq!(report.match_len, 4);
        assert_eq!(report.mismatch, None);
        assert!(!report.insufficient_data);
    }

    #[test]
    fn first_mismatch_is_reported() {
        let seq = BFileSequence::parse("A999006", "0 0\n1 1\n2 5\n3 18\n").unwrap();
        let report = compare_prefix(&ints(&[0, 1, 5, 17]), &seq, 0);
        assert_eq!(report.match_len, 3);
        let mismatch = report.mismatch.unwrap();
        assert_eq!(mismatch.oeis_index, 3);
        assert_eq!(mismatch.computed, BigInt::from(17));
        assert_eq!(mismatch.expected, BigInt::from(18));
    }

    #[test]
    fn negative_shift_skips_leading_terms() {
        // computed[i] maps to index i - 1: computed[0] has no partner.
        let seq = BFileSequence::parse("A999007", "0 1\n1 7\n2 31\n").unwrap();
        let report = compare_prefix(&ints(&[0, 1, 7, 31]), &seq, -1);
        assert_eq!(report.compared, 3);
        assert_eq!(report.match_len, 3);
        assert_eq!(report.mismatch, None);
    }

    #[test]
    fn empty_overlap_flags_insufficient_data() {
        let seq = BFileSequence::parse("A999008", "0 1\n1 2\n").unwrap();
        let report = compare_prefix(&ints(&[1, 2]), &seq, 10);
        assert_eq!(report.compared, 0);
        assert_eq!(report.match_len, 0);
        assert!(report.insufficient_data);
    }

    #[test]
    fn alignment_search_recovers_the_shift() {
        let seq = BFileSequence::parse("A999009", "0 1\n1 7\n2 31\n3 111\n").unwrap();
        let (shift, report) = best_shift_alignment(&ints(&[0, 1, 7, 31, 111]), &seq, -3..=3);
        assert_eq!(shift, -1);
        assert_eq!(report.match_len, 4);
    }
}
