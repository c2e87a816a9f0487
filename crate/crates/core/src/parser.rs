//! Text format for weighted Pauli sums.
//!
//! ```text
//! hamiltonian := [sign] term (('+' | '-') [sign] term)*
//! term        := coeff '*' factor+ | coeff '*' 'Id' | factor+
//! factor      := ('X' | 'Y' | 'Z') index
//! ```
//!
//! Coefficients are decimal literals, indices are 0-based. Whitespace
//! (including line breaks) is insignificant and `#` starts a comment that runs
//! to the end of the line.

use std::fmt::Write as _;

use thiserror::Error;

use crate::pauli::{Hamiltonian, PauliOp, PauliString, PauliTerm};

/// Parse failure with the character offset it refers to.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at offset {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum TokenKind {
    Plus,
    Minus,
    Star,
    Number(String),
    Pauli(PauliOp),
    Id,
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    pos: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i;
        match c {
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            c if c.is_whitespace() => i += 1,
            '+' => {
                tokens.push(Token {
                    kind: TokenKind::Plus,
                    pos,
                });
                i += 1;
            }
            '-' => {
                tokens.push(Token {
                    kind: TokenKind::Minus,
                    pos,
                });
                i += 1;
            }
            '*' => {
                tokens.push(Token {
                    kind: TokenKind::Star,
                    pos,
                });
                i += 1;
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i < chars.len() && chars[i] == '.' {
                    i += 1;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                    i += 1;
                    if i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
                        i += 1;
                    }
                    let exp_start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    if i == exp_start {
                        return Err(ParseError::new(start, "malformed number: missing exponent digits"));
                    }
                }
                let lexeme: String = chars[start..i].iter().collect();
                if !lexeme.chars().next().is_some_and(|c| c.is_ascii_digit()) {
                    return Err(ParseError::new(start, format!("malformed number {lexeme:?}")));
                }
                tokens.push(Token {
                    kind: TokenKind::Number(lexeme),
                    pos: start,
                });
            }
            c if c.is_alphabetic() => {
                let start = i;
                while i < chars.len() && chars[i].is_alphabetic() {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                let kind = match word.as_str() {
                    "X" => TokenKind::Pauli(PauliOp::X),
                    "Y" => TokenKind::Pauli(PauliOp::Y),
                    "Z" => TokenKind::Pauli(PauliOp::Z),
                    "Id" => TokenKind::Id,
                    _ => return Err(ParseError::new(start, format!("unknown token {word:?}"))),
                };
                tokens.push(Token { kind, pos: start });
            }
            other => return Err(ParseError::new(pos, format!("unexpected character {other:?}"))),
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    idx: usize,
    n_qubits: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.idx)
    }

    fn peek_kind(&self) -> Option<&TokenKind> {
        self.peek().map(|t| &t.kind)
    }

    fn next(&mut self) -> Option<Token> {
        let tok = self.tokens.get(self.idx).cloned();
        if tok.is_some() {
            self.idx += 1;
        }
        tok
    }

    fn here(&self) -> usize {
        self.peek().map_or(self.end, |t| t.pos)
    }

    fn parse(mut self) -> Result<Hamiltonian, ParseError> {
        if self.tokens.is_empty() {
            return Err(ParseError::new(0, "empty input"));
        }
        let mut terms = vec![self.term(false)?];
        while let Some(tok) = self.next() {
            let negate = match tok.kind {
                TokenKind::Plus => false,
                TokenKind::Minus => true,
                _ => return Err(ParseError::new(tok.pos, "expected '+' or '-' between terms")),
            };
            terms.push(self.term(negate)?);
        }
        Ok(Hamiltonian::new(self.n_qubits, terms).expect("terms are built with n_qubits entries"))
    }

    fn term(&mut self, mut negate: bool) -> Result<PauliTerm, ParseError> {
        match self.peek_kind() {
            Some(TokenKind::Minus) => {
                negate = !negate;
                self.idx += 1;
            }
            Some(TokenKind::Plus) => self.idx += 1,
            _ => {}
        }

        let mut coefficient = 1.0;
        let mut ops = vec![PauliOp::I; self.n_qubits];
        match self.peek_kind() {
            Some(TokenKind::Number(_)) => {
                let tok = self.next().unwrap();
                let TokenKind::Number(lexeme) = tok.kind else {
                    unreachable!()
                };
                coefficient = parse_coefficient(&lexeme, tok.pos)?;
                match self.next() {
                    Some(Token {
                        kind: TokenKind::Star, ..
                    }) => {}
                    Some(t) => return Err(ParseError::new(t.pos, "expected '*' after coefficient")),
                    None => return Err(ParseError::new(self.end, "expected '*' after coefficient")),
                }
                if let Some(TokenKind::Id) = self.peek_kind() {
                    self.idx += 1;
                } else {
                    self.factors(&mut ops)?;
                }
            }
            Some(TokenKind::Pauli(_)) => self.factors(&mut ops)?,
            Some(TokenKind::Id) => {
                return Err(ParseError::new(self.here(), "'Id' requires an explicit coefficient"));
            }
            _ => return Err(ParseError::new(self.here(), "expected a term")),
        }

        if negate {
            coefficient = -coefficient;
        }
        let string = PauliString::new(ops).expect("n_qubits >= 1");
        Ok(PauliTerm::new(coefficient, string).expect("coefficient checked finite"))
    }

    fn factors(&mut self, ops: &mut [PauliOp]) -> Result<(), ParseError> {
        let mut seen = 0;
        while let Some(TokenKind::Pauli(op)) = self.peek_kind() {
            let op = *op;
            let pos = self.here();
            self.idx += 1;
            let qubit = match self.next() {
                Some(Token {
                    kind: TokenKind::Number(lexeme),
                    pos: num_pos,
                }) => {
                    if !lexeme.chars().all(|c| c.is_ascii_digit()) {
                        return Err(ParseError::new(
                            num_pos,
                            format!("qubit index must be an integer, got {lexeme:?}"),
                        ));
                    }
                    lexeme
                        .parse::<usize>()
                        .map_err(|_| ParseError::new(num_pos, format!("qubit index {lexeme} is too large")))?
                }
                Some(t) => return Err(ParseError::new(t.pos, "expected qubit index")),
                None => return Err(ParseError::new(self.end, "expected qubit index")),
            };
            if qubit >= self.n_qubits {
                return Err(ParseError::new(
                    pos,
                    format!("qubit index {qubit} out of range for {} qubits", self.n_qubits),
                ));
            }
            if !ops[qubit].is_identity() {
                return Err(ParseError::new(pos, format!("qubit {qubit} appears twice in one term")));
            }
            ops[qubit] = op;
            seen += 1;
        }
        if seen == 0 {
            return Err(ParseError::new(self.here(), "expected a Pauli factor"));
        }
        Ok(())
    }
}

fn parse_coefficient(lexeme: &str, pos: usize) -> Result<f64, ParseError> {
    let value: f64 = lexeme
        .parse()
        .map_err(|_| ParseError::new(pos, format!("malformed number {lexeme:?}")))?;
    if !value.is_finite() {
        return Err(ParseError::new(pos, format!("coefficient {lexeme} is not finite")));
    }
    Ok(value)
}

/// Parses `text` as a Hamiltonian on `n_qubits` qubits.
pub fn parse_hamiltonian(text: &str, n_qubits: usize) -> Result<Hamiltonian, ParseError> {
    if n_qubits == 0 {
        return Err(ParseError::new(0, "n_qubits must be positive"));
    }
    let end = text.chars().count();
    let tokens = tokenize(text)?;
    Parser {
        tokens,
        idx: 0,
        n_qubits,
        // offsets past the last character are clamped onto it
        end: end.saturating_sub(1),
    }
    .parse()
}

/// Canonical text for `h`: `coeff*F i F j ...` per term, joined by ` + `.
///
/// Coefficients use the shortest representation that parses back to the same
/// double, so `parse_hamiltonian(&format_hamiltonian(h), n)` reproduces `h`.
/// An empty Hamiltonian formats as the empty string.
pub fn format_hamiltonian(h: &Hamiltonian) -> String {
    let mut out = String::new();
    for (k, term) in h.terms().iter().enumerate() {
        if k > 0 {
            out.push_str(" + ");
        }
        write!(out, "{}*", term.coefficient()).unwrap();
        let string = term.string();
        if string.weight() == 0 {
            out.push_str("Id");
            continue;
        }
        for (j, q) in string.support().into_iter().enumerate() {
            if j > 0 {
                out.push(' ');
            }
            write!(out, "{}{}", string.ops()[q], q).unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn terms(h: &Hamiltonian) -> Vec<(f64, String)> {
        h.terms()
            .iter()
            .map(|t| (t.coefficient(), t.string().to_dense()))
            .collect()
    }

    #[test]
    fn parses_weighted_sum() {
        let h = parse_hamiltonian("0.5*Z0 Z1 + 0.3*X0", 2).unwrap();
        assert_eq!(terms(&h), vec![(0.5, "ZZ".into()), (0.3, "XI".into())]);
    }

    #[test]
    fn implicit_unit_coefficient() {
        let h = parse_hamiltonian("Z0 Y2 X5 Z7", 8).unwrap();
        assert_eq!(h.len(), 1);
        assert_eq!(h.terms()[0].coefficient(), 1.0);
        assert_eq!(h.terms()[0].string().support(), vec![0, 2, 5, 7]);
    }

    #[test]
    fn signs_and_identity() {
        let h = parse_hamiltonian("-Z0 - 0.25*X1 + -1.5*Id - -2*Y0", 2).unwrap();
        assert_eq!(
            terms(&h),
            vec![
                (-1.0, "ZI".into()),
                (-0.25, "IX".into()),
                (-1.5, "II".into()),
                (2.0, "YI".into())
            ]
        );
    }

    #[test]
    fn comments_and_newlines() {
        let text = "# two-site model\n0.5*Z0 Z1   # coupling\n+ 0.3*X0\n";
        let h = parse_hamiltonian(text, 2).unwrap();
        assert_eq!(h.len(), 2);
    }

    #[test]
    fn duplicate_qubit_points_at_second_factor() {
        let err = parse_hamiltonian("1.0*Z0 Z0", 2).unwrap_err();
        assert_eq!(err.position, 7);
    }

    #[test]
    fn error_positions() {
        let cases = [
            ("", 0),
            ("   ", 0),
            ("Z2", 0),
            ("0.5*Q0", 4),
            ("0.5 Z0", 4),
            ("Z0 +", 3),
            ("1.2.3*Z0", 3),
            ("1e*Z0", 0),
            ("Z0.5", 1),
            ("Id", 0),
            ("0.5*Z0 Z1 0.3*X0", 10),
            ("1e400*Z0", 0),
            ("Z0 & X1", 3),
        ];
        for (text, pos) in cases {
            let err = parse_hamiltonian(text, 2).unwrap_err();
            assert_eq!(err.position, pos, "{text:?}: {err}");
        }
    }

    #[test]
    fn formats_canonically() {
        let h = parse_hamiltonian("1*Z1 Z0", 2).unwrap();
        assert_eq!(format_hamiltonian(&h), "1*Z0 Z1");
        let h = parse_hamiltonian("0.5*Z0 Z1 - 0.3*X0", 2).unwrap();
        assert_eq!(format_hamiltonian(&h), "0.5*Z0 Z1 + -0.3*X0");
        let h = parse_hamiltonian("Z0 Y2 X5 Z7", 8).unwrap();
        assert_eq!(format_hamiltonian(&h), "1*Z0 Y2 X5 Z7");
        let h = parse_hamiltonian("2.5*Id", 3).unwrap();
        assert_eq!(format_hamiltonian(&h), "2.5*Id");
    }
}
