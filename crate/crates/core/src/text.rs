//! Whitespace tokenizer shared by the plain-text input formats.

use std::str::FromStr;

use crate::error::{Error, Result};

pub(crate) struct Tokens<'a> {
    items: Vec<(usize, &'a str)>,
    next: usize,
    last_line: usize,
}

impl<'a> Tokens<'a> {
    /// Splits `text` into tokens, dropping lines whose first non-blank
    /// character is `#`.
    pub(crate) fn new(text: &'a str) -> Self {
        let mut items = Vec::new();
        let mut last_line = 1;
        for (i, line) in text.lines().enumerate() {
            last_line = i + 1;
            if line.trim_start().starts_with('#') {
                continue;
            }
            items.extend(line.split_whitespace().map(|t| (i + 1, t)));
        }
        Tokens {
            items,
            next: 0,
            last_line,
        }
    }

    /// Next token with its 1-based line number.
    pub(crate) fn next_raw(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let tok = self
            .items
            .get(self.next)
            .copied()
            .ok_or_else(|| Error::parse(self.last_line, format!("missing {what}")))?;
        self.next += 1;
        Ok(tok)
    }

    pub(crate) fn next<T: FromStr>(&mut self, what: &str) -> Result<(usize, T)> {
        let (line, tok) = self.next_raw(what)?;
        let value = tok
            .parse::<T>()
            .map_err(|_| Error::parse(line, format!("malformed {what} `{tok}`")))?;
        Ok((line, value))
    }

    pub(crate) fn peek_line(&self) -> Option<usize> {
        self.items.get(self.next).map(|&(line, _)| line)
    }

    pub(crate) fn finish(&self) -> Result<()> {
        match self.items.get(self.next) {
            Some(&(line, tok)) => Err(Error::parse(
                line,
                format!("unexpected trailing token `{tok}`"),
            )),
            None => Ok(()),
        }
    }
}
