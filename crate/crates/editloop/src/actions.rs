//! Task-specific editing actions with fixed-length token encodings, plus the
//! tagging baseline's tag derivation and realization.
//!
//! Action encodings (one action per line of decoder output):
//!
//! * AOR: `<pos_p> s` — insert symbol `s` before position `p` (length 2).
//! * AES: `<pos_p1> <pos_p2> s` — replace positions `p1..=p2` with number `s`
//!   (length 3).
//! * AEC: `<op> <pos_p> s` with `<op>` one of `<delete>`, `<substitute>`,
//!   `<insert>`; delete repeats `<pos_p>` in the symbol slot (length 3).
//! * Termination: `<done>` repeated to the task's action length.

use thiserror::Error;

use crate::arith::{Token, TokenSeq};
use crate::task::Task;
use crate::trace::{edit_script, EditOp};

pub const DONE_TOKEN: &str = "<done>";
pub const OP_DELETE: &str = "<delete>";
pub const OP_SUBSTITUTE: &str = "<substitute>";
pub const OP_INSERT: &str = "<insert>";

/// One atomic editing step.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Action {
    /// Insert `symbol` before position `pos` (AOR, AEC).
    Insert { pos: usize, symbol: Token },
    /// Replace positions `start..=end` with `symbol` (AES); `start <= end`.
    SubstituteSpan { start: usize, end: usize, symbol: Token },
    /// Replace the token at `pos` with `symbol` (AEC).
    Substitute { pos: usize, symbol: Token },
    /// Remove the token at `pos` (AEC).
    Delete { pos: usize },
    /// Terminate inference, leaving the sequence unchanged.
    Done,
}

impl Action {
    /// The primary position component, used for ordering checks. `Done` has
    /// none.
    pub fn primary_pos(&self) -> Option<usize> {
        match self {
            Action::Insert { pos, .. }
            | Action::Substitute { pos, .. }
            | Action::Delete { pos } => Some(*pos),
            Action::SubstituteSpan { start, .. } => Some(*start),
            Action::Done => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("action {0} is not well-formed for task {1}")]
    IllFormed(String, Task),
    #[error("pair cannot be aligned: {0}")]
    Unalignable(String),
}

fn pos_token(p: usize) -> Token {
    Token::Special(format!("<pos_{p}>"))
}

fn parse_pos(t: &Token) -> Option<usize> {
    let Token::Special(s) = t else { return None };
    let inner = s.strip_prefix("<pos_")?.strip_suffix('>')?;
    let p: usize = inner.parse().ok()?;
    // Canonical spelling only; `<pos_007>` is a template violation.
    if p.to_string() != inner {
        return None;
    }
    Some(p)
}

fn is_done(t: &Token) -> bool {
    matches!(t, Token::Special(s) if s == DONE_TOKEN)
}

fn aor_symbol_ok(t: &Token) -> bool {
    t.is_operator() || *t == Token::Eq
}

fn aec_symbol_ok(t: &Token) -> bool {
    t.is_number() || t.is_operator() || *t == Token::Eq
}

/// Encode a well-formed action into the task's fixed-length token form.
pub fn encode_action(action: &Action, task: Task) -> Result<TokenSeq, ActionError> {
    let ill = || ActionError::IllFormed(format!("{action:?}"), task);
    if *action == Action::Done {
        return Ok(TokenSeq(vec![Token::special(DONE_TOKEN); task.action_len()]));
    }
    let tokens = match (task, action) {
        (Task::Aor, Action::Insert { pos, symbol }) if aor_symbol_ok(symbol) => {
            vec![pos_token(*pos), symbol.clone()]
        }
        (Task::Aes, Action::SubstituteSpan { start, end, symbol })
            if start <= end && symbol.is_number() =>
        {
            vec![pos_token(*start), pos_token(*end), symbol.clone()]
        }
        (Task::Aec, Action::Delete { pos }) => {
            vec![Token::special(OP_DELETE), pos_token(*pos), pos_token(*pos)]
        }
        (Task::Aec, Action::Substitute { pos, symbol }) if aec_symbol_ok(symbol) => {
            vec![Token::special(OP_SUBSTITUTE), pos_token(*pos), symbol.clone()]
        }
        (Task::Aec, Action::Insert { pos, symbol }) if aec_symbol_ok(symbol) => {
            vec![Token::special(OP_INSERT), pos_token(*pos), symbol.clone()]
        }
        _ => return Err(ill()),
    };
    Ok(TokenSeq(tokens))
}

/// Parse a token sequence back into an action. Total: anything that does not
/// match the task's template yields `None` (the interpreter skips it).
pub fn decode_action(tokens: &TokenSeq, task: Task) -> Option<Action> {
    let t = tokens.tokens();
    if t.len() != task.action_len() {
        return None;
    }
    if t.iter().all(is_done) {
        return Some(Action::Done);
    }
    match task {
        Task::Aor => {
            let pos = parse_pos(&t[0])?;
            let symbol = t[1].clone();
            if !aor_symbol_ok(&symbol) {
                return None;
            }
            Some(Action::Insert { pos, symbol })
        }
        Task::Aes => {
            let start = parse_pos(&t[0])?;
            let end = parse_pos(&t[1])?;
            let symbol = t[2].clone();
            if start > end || !symbol.is_number() {
                return None;
            }
            Some(Action::SubstituteSpan { start, end, symbol })
        }
        Task::Aec => {
            let Token::Special(op) = &t[0] else { return None };
            let pos = parse_pos(&t[1])?;
            match op.as_str() {
                OP_DELETE => {
                    // The symbol slot repeats the position token.
                    if parse_pos(&t[2]) != Some(pos) {
                        return None;
                    }
                    Some(Action::Delete { pos })
                }
                OP_SUBSTITUTE if aec_symbol_ok(&t[2]) => Some(Action::Substitute {
                    pos,
                    symbol: t[2].clone(),
                }),
                OP_INSERT if aec_symbol_ok(&t[2]) => Some(Action::Insert {
                    pos,
                    symbol: t[2].clone(),
                }),
                _ => None,
            }
        }
    }
}

/// Per-source-token edit tag for the Tagging baseline.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Tag {
    Keep,
    Delete,
    Sub(Token),
    Insert(Token),
}

impl Tag {
    /// Surface form: `<keep>`, `<delete>`, `<sub_t>`, `<insert_t>`; the
    /// composed forms are single vocabulary items.
    pub fn token(&self) -> Token {
        match self {
            Tag::Keep => Token::special("<keep>"),
            Tag::Delete => Token::special("<delete>"),
            Tag::Sub(t) => Token::Special(format!("<sub_{t}>")),
            Tag::Insert(t) => Token::Special(format!("<insert_{t}>")),
        }
    }

    pub fn parse(token: &Token) -> Option<Tag> {
        let Token::Special(s) = token else { return None };
        match s.as_str() {
            "<keep>" => return Some(Tag::Keep),
            "<delete>" => return Some(Tag::Delete),
            _ => {}
        }
        if let Some(inner) = s.strip_prefix("<sub_").and_then(|r| r.strip_suffix('>')) {
            if !inner.is_empty() {
                return Some(Tag::Sub(Token::parse_unit(inner)));
            }
        }
        if let Some(inner) = s.strip_prefix("<insert_").and_then(|r| r.strip_suffix('>')) {
            if !inner.is_empty() {
                return Some(Tag::Insert(Token::parse_unit(inner)));
            }
        }
        None
    }
}

/// Render a tag sequence as tokens (the training-target surface form).
pub fn tags_to_tokens(tags: &[Tag]) -> TokenSeq {
    tags.iter().map(|t| t.token()).collect()
}

/// Parse predicted tokens into tags, dropping anything that is not a tag.
/// Total, so arbitrary model output can be realized and scored.
pub fn parse_tags(tokens: &TokenSeq) -> Vec<Tag> {
    tokens.iter().filter_map(Tag::parse).collect()
}

/// Derive a tag sequence whose realization over `src` equals `tgt`.
pub fn tags_from_pair(src: &TokenSeq, tgt: &TokenSeq, task: Task) -> Result<Vec<Tag>, ActionError> {
    match task {
        Task::Aor => {
            // `src` must be a subsequence of `tgt`: greedy matching inserts
            // every unmatched target token.
            let mut tags = Vec::with_capacity(tgt.len());
            let mut cursor = 0usize;
            for t in tgt {
                if cursor < src.len() && src[cursor] == *t {
                    tags.push(Tag::Keep);
                    cursor += 1;
                } else {
                    tags.push(Tag::Insert(t.clone()));
                }
            }
            if cursor != src.len() {
                return Err(ActionError::Unalignable(format!(
                    "source is not a subsequence of target: {src} vs {tgt}"
                )));
            }
            Ok(tags)
        }
        Task::Aes => {
            // Each bracketed group maps to one substitution (its simplified
            // value) followed by deletions; everything else aligns one-to-one.
            let mut tags = Vec::with_capacity(src.len());
            let mut i = 0usize;
            let mut j = 0usize;
            let unalignable =
                |what: &str| ActionError::Unalignable(format!("{what}: {src} vs {tgt}"));
            while i < src.len() {
                if src[i] == Token::LParen {
                    let close = src.tokens()[i..]
                        .iter()
                        .position(|t| *t == Token::RParen)
                        .map(|k| i + k)
                        .ok_or_else(|| unalignable("unclosed group"))?;
                    if j >= tgt.len() || !tgt[j].is_number() {
                        return Err(unalignable("group does not map to a number"));
                    }
                    tags.push(Tag::Sub(tgt[j].clone()));
                    tags.extend(std::iter::repeat_n(Tag::Delete, close - i));
                    i = close + 1;
                    j += 1;
                } else {
                    if j >= tgt.len() || src[i] != tgt[j] {
                        return Err(unalignable("token mismatch outside group"));
                    }
                    tags.push(Tag::Keep);
                    i += 1;
                    j += 1;
                }
            }
            if j != tgt.len() {
                return Err(unalignable("target has extra tokens"));
            }
            Ok(tags)
        }
        Task::Aec => {
            let script = edit_script(src, tgt);
            Ok(script
                .iter()
                .map(|op| match op {
                    EditOp::Match => Tag::Keep,
                    EditOp::Substitute(t) => Tag::Sub(t.clone()),
                    EditOp::Delete => Tag::Delete,
                    EditOp::Insert(t) => Tag::Insert(t.clone()),
                })
                .collect())
        }
    }
}

/// Apply a tag sequence over a source, left to right.
///
/// Total: consuming tags (`KEEP`/`DELETE`/`SUB`) past the end of the source
/// are ignored, trailing `INSERT` tags still emit, and leftover source tokens
/// are dropped.
pub fn realize(tags: &[Tag], src: &TokenSeq) -> TokenSeq {
    let mut out = Vec::new();
    let mut cursor = 0usize;
    for tag in tags {
        match tag {
            Tag::Keep => {
                if cursor < src.len() {
                    out.push(src[cursor].clone());
                    cursor += 1;
                }
            }
            Tag::Delete => {
                if cursor < src.len() {
                    cursor += 1;
                }
            }
            Tag::Sub(t) => {
                if cursor < src.len() {
                    out.push(t.clone());
                    cursor += 1;
                }
            }
            Tag::Insert(t) => out.push(t.clone()),
        }
    }
    TokenSeq(out)
}
