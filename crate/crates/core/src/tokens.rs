//! Token sequences and the raw-symbol vocabulary mapping.

use std::collections::HashMap;
use std::ops::Deref;

use crate::error::{Error, Result};

pub type TokenId = u32;

/// Id of the separator placed between source and target. No token may use it.
pub const SEPARATOR: TokenId = 0;

/// A sequence of token ids, all `>= 1`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct TokenSequence {
    tokens: Vec<TokenId>,
}

impl TokenSequence {
    pub fn new(tokens: Vec<TokenId>) -> Result<Self> {
        if let Some(index) = tokens.iter().position(|&t| t == SEPARATOR) {
            return Err(Error::ReservedToken { index });
        }
        Ok(Self { tokens })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn as_slice(&self) -> &[TokenId] {
        &self.tokens
    }

    pub fn into_vec(self) -> Vec<TokenId> {
        self.tokens
    }
}

impl Deref for TokenSequence {
    type Target = [TokenId];

    fn deref(&self) -> &[TokenId] {
        &self.tokens
    }
}

impl TryFrom<Vec<TokenId>> for TokenSequence {
    type Error = Error;

    fn try_from(tokens: Vec<TokenId>) -> Result<Self> {
        Self::new(tokens)
    }
}

/// Bijection between raw symbols and dense ids `1..=size`, assigned in
/// first-seen order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VocabMap {
    forward: HashMap<String, TokenId>,
    // reverse[id - 1] is the symbol for `id`
    reverse: Vec<String>,
}

impl VocabMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn size(&self) -> usize {
        self.reverse.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reverse.is_empty()
    }

    /// Returns the id of `symbol`, assigning the next free id if unseen.
    pub fn intern(&mut self, symbol: &str) -> TokenId {
        if let Some(&id) = self.forward.get(symbol) {
            return id;
        }
        let id = TokenId::try_from(self.reverse.len() + 1).expect("vocabulary exceeds u32 ids");
        self.forward.insert(symbol.to_owned(), id);
        self.reverse.push(symbol.to_owned());
        id
    }

    pub fn id(&self, symbol: &str) -> Option<TokenId> {
        self.forward.get(symbol).copied()
    }

    pub fn symbol(&self, id: TokenId) -> Option<&str> {
        let idx = (id as usize).checked_sub(1)?;
        self.reverse.get(idx).map(String::as_str)
    }

    /// Symbols in id order, starting at id 1.
    pub fn symbols(&self) -> &[String] {
        &self.reverse
    }
}

/// Maps raw symbols to ids, extending `vocab` with unseen symbols.
///
/// Tokenizing the source and then the target with the same `vocab` yields ids
/// over their combined vocabulary.
pub fn tokenize<I>(lines: I, vocab: &mut VocabMap) -> TokenSequence
where
    I: IntoIterator,
    I::Item: AsRef<str>,
{
    let tokens = lines
        .into_iter()
        .map(|s| vocab.intern(s.as_ref()))
        .collect();
    TokenSequence { tokens }
}

/// Parses one non-negative integer per line, shifting every value by one so
/// that id 0 stays free for the separator.
///
/// Line numbers in errors are 1-based.
pub fn parse_integer_sequence<I>(lines: I) -> Result<TokenSequence>
where
    I: IntoIterator,
    I::Item: AsRef<str>,
{
    let mut tokens = Vec::new();
    for (idx, line) in lines.into_iter().enumerate() {
        let text = line.as_ref().trim();
        let value: TokenId = text.parse().map_err(|_| Error::Parse {
            line: idx + 1,
            message: format!("expected a non-negative integer, found {text:?}"),
        })?;
        let id = value.checked_add(1).ok_or_else(|| Error::Parse {
            line: idx + 1,
            message: format!("value {value} is too large"),
        })?;
        tokens.push(id);
    }
    Ok(TokenSequence { tokens })
}
