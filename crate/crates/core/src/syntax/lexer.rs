use super::SyntaxError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    /// Lowercase identifier: atom, agent or proof term depending on position.
    Word(String),
    /// Single uppercase letter standing for a formula metavariable
    /// (scheme patterns only).
    Meta(String),
    K,
    E,
    Prove,
    Proven,
    False,
    Tilde,
    Amp,
    Bar,
    Arrow,
    LBrack,
    RBrack,
    Lt,
    Gt,
    LParen,
    RParen,
    Comma,
    Colon,
    Plus,
    Star,
    Bang,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Word(w) | Tok::Meta(w) => format!("'{w}'"),
            Tok::K => "'K'".into(),
            Tok::E => "'E'".into(),
            Tok::Prove => "'Prove'".into(),
            Tok::Proven => "'Proven'".into(),
            Tok::False => "'false'".into(),
            Tok::Tilde => "'~'".into(),
            Tok::Amp => "'&'".into(),
            Tok::Bar => "'|'".into(),
            Tok::Arrow => "'->'".into(),
            Tok::LBrack => "'['".into(),
            Tok::RBrack => "']'".into(),
            Tok::Lt => "'<'".into(),
            Tok::Gt => "'>'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::Colon => "':'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Star => "'*'".into(),
            Tok::Bang => "'!'".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

pub(crate) fn tokenize(text: &str, metas: bool) -> Result<Vec<Spanned>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);

    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let start_col = col;
        let single = |tok: Tok| Some((tok, 1));
        let fixed = match c {
            '~' => single(Tok::Tilde),
            '&' => single(Tok::Amp),
            '|' => single(Tok::Bar),
            '[' => single(Tok::LBrack),
            ']' => single(Tok::RBrack),
            '<' => single(Tok::Lt),
            '>' => single(Tok::Gt),
            '(' => single(Tok::LParen),
            ')' => single(Tok::RParen),
            ',' => single(Tok::Comma),
            ':' => single(Tok::Colon),
            '+' => single(Tok::Plus),
            '*' => single(Tok::Star),
            '!' => single(Tok::Bang),
            '-' if chars.get(i + 1) == Some(&'>') => Some((Tok::Arrow, 2)),
            _ => None,
        };
        if let Some((tok, len)) = fixed {
            out.push(Spanned { tok, line, column: start_col });
            i += len;
            col += len;
            continue;
        }

        if c.is_ascii_lowercase() {
            let mut j = i;
            while j < chars.len()
                && (chars[j].is_ascii_lowercase() || chars[j].is_ascii_digit() || chars[j] == '_')
            {
                j += 1;
            }
            let word: String = chars[i..j].iter().collect();
            let tok = if word == "false" { Tok::False } else { Tok::Word(word) };
            out.push(Spanned { tok, line, column: start_col });
            col += j - i;
            i = j;
            continue;
        }

        if c.is_ascii_uppercase() {
            let rest: String = chars[i..chars.len().min(i + 6)].iter().collect();
            let (tok, len) = if rest.starts_with("Proven") {
                (Tok::Proven, 6)
            } else if rest.starts_with("Prove") {
                (Tok::Prove, 5)
            } else if c == 'K' {
                (Tok::K, 1)
            } else if c == 'E' {
                (Tok::E, 1)
            } else if metas {
                (Tok::Meta(c.to_string()), 1)
            } else {
                return Err(SyntaxError::Parse {
                    line,
                    column: start_col,
                    message: format!("unknown lexeme '{c}'"),
                });
            };
            out.push(Spanned { tok, line, column: start_col });
            i += len;
            col += len;
            continue;
        }

        return Err(SyntaxError::Parse {
            line,
            column: start_col,
            message: format!("unknown lexeme '{c}'"),
        });
    }
    out.push(Spanned { tok: Tok::Eof, line, column: col });
    Ok(out)
}
