//! Empirical local-confluence check: reduce every short word via all distinct
//! first-step choices and compare the resulting normal forms.

use super::presentation::Presentation;
use super::{AlgebraElement, Letter, Word};

/// A word whose reductions disagree, with the two offending first steps.
#[derive(Clone, Debug)]
pub struct Discrepancy {
    pub word: String,
    pub position_a: usize,
    pub position_b: usize,
    pub normal_form_a: String,
    pub normal_form_b: String,
}

#[derive(Clone, Debug, Default)]
pub struct ConfluenceReport {
    pub words_checked: usize,
    pub words_with_overlaps: usize,
    pub discrepancies: Vec<Discrepancy>,
}

impl ConfluenceReport {
    pub fn is_confluent(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// Reduce every word up to `max_len` over the presentation's symbols (inverse
/// letters included) via all distinct first reduction steps; any pair of
/// distinct results is recorded.  A nonempty list is a finding, not an error.
pub fn check_local_confluence(p: &Presentation, max_len: usize) -> ConfluenceReport {
    let mut letters: Vec<Letter> = vec![];
    for &g in p.alphabet() {
        letters.push(Letter::new(g, 1));
        if p.is_invertible(g) {
            letters.push(Letter::new(g, -1));
        }
    }
    let mut report = ConfluenceReport::default();
    let mut word = vec![];
    enumerate(p, &letters, &mut word, max_len, &mut report);
    report
}

fn enumerate(
    p: &Presentation,
    letters: &[Letter],
    word: &mut Vec<Letter>,
    max_len: usize,
    report: &mut ConfluenceReport,
) {
    if word.len() >= 2 {
        check_word(p, word, report);
    }
    if word.len() == max_len {
        return;
    }
    for &l in letters {
        word.push(l);
        enumerate(p, letters, word, max_len, report);
        word.pop();
    }
}

fn check_word(p: &Presentation, word: &[Letter], report: &mut ConfluenceReport) {
    report.words_checked += 1;
    let steps = p.redex_positions(word);
    if steps.len() < 2 {
        return;
    }
    report.words_with_overlaps += 1;
    let results: Vec<(usize, AlgebraElement)> = steps
        .into_iter()
        .map(|(i, r)| (i, p.reduce_after_step(word, i, r)))
        .collect();
    for a in 0..results.len() {
        for b in a + 1..results.len() {
            if results[a].1 != results[b].1 {
                report.discrepancies.push(Discrepancy {
                    word: Word::canon(word.iter().copied()).to_string(),
                    position_a: results[a].0,
                    position_b: results[b].0,
                    normal_form_a: results[a].1.to_string(),
                    normal_form_b: results[b].1.to_string(),
                });
            }
        }
    }
}
