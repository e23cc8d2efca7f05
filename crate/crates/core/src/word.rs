//! Reduced words in a free group. Letters are nonzero signed indices:
//! `+k` is the k-th generator (1-based), `-k` its inverse.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<i8>,
}

impl Word {
    pub fn identity() -> Self {
        Word { letters: Vec::new() }
    }

    /// Builds a word, cancelling adjacent inverse pairs.
    pub fn from_letters(letters: &[i8]) -> Self {
        let mut w = Word::identity();
        for &l in letters {
            w.push(l);
        }
        w
    }

    /// Appends one letter with free reduction.
    pub fn push(&mut self, letter: i8) {
        assert!(letter != 0, "letters are nonzero signed indices");
        if self.letters.last() == Some(&-letter) {
            self.letters.pop();
        } else {
            self.letters.push(letter);
        }
    }

    pub fn letters(&self) -> &[i8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.letters
            .windows(2)
            .all(|w| w[0] != -w[1])
    }

    pub fn inverse(&self) -> Self {
        Word {
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut w = self.clone();
        for &l in other.letters() {
            w.push(l);
        }
        w
    }
}

impl fmt::Display for Word {
    /// Lowercase letters for generators, uppercase for inverses; the empty
    /// word prints as the empty string.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.letters {
            let idx = l.unsigned_abs() - 1;
            let ch = if l > 0 { b'a' + idx } else { b'A' + idx };
            write!(f, "{}", ch as char)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_display() {
        let w = Word::from_letters(&[1, 2, -2, 1, -1, -1]);
        assert!(w.is_empty());

        let w = Word::from_letters(&[1, 2, -1]);
        assert_eq!(format!("{w}"), "abA");
        assert!(w.is_reduced());
        assert_eq!(w.inverse().letters(), &[1, -2, -1]);
    }

    #[test]
    fn concat_cancels() {
        let a = Word::from_letters(&[1, 2]);
        let b = Word::from_letters(&[-2, -1, 2]);
        assert_eq!(a.concat(&b).letters(), &[2]);
    }
}
