//! Word parsing for both accepted notations: signed indices ("1 2 -1")
//! and named generators ("s1 s2 s1^-1").

use artin_depth::coxeter::{ArtinWord, TypeId};
use artin_depth::{Error, Result};

/// Parse whitespace-separated letters. Indices are 1-based; a violation
/// reports the 1-based token position.
pub fn parse_word(t: TypeId, text: &str) -> Result<ArtinWord> {
    let mut letters = Vec::new();
    for (k, tok) in text.split_whitespace().enumerate() {
        let (i, e) = parse_token(tok).map_err(|msg| Error::WordParse { pos: k + 1, msg })?;
        letters.push((i, e));
    }
    ArtinWord::new(t, letters)
}

fn parse_token(tok: &str) -> std::result::Result<(usize, i8), String> {
    if let Some(rest) = tok.strip_prefix('s') {
        let (base, exp) = match rest.split_once('^') {
            None => (rest, 1),
            Some((b, "1")) => (b, 1),
            Some((b, "-1")) => (b, -1),
            Some((_, other)) => {
                return Err(format!(
                    "unsupported exponent {:?}: only ^1 and ^-1",
                    other
                ))
            }
        };
        let i: usize = base
            .parse()
            .map_err(|_| format!("malformed generator {:?}", tok))?;
        if i == 0 {
            return Err("generator indices start at 1".to_string());
        }
        Ok((i, exp))
    } else {
        let v: i64 = tok
            .parse()
            .map_err(|_| format!("unrecognized token {:?}", tok))?;
        if v == 0 {
            return Err("generator indices start at 1".to_string());
        }
        Ok((v.unsigned_abs() as usize, if v > 0 { 1 } else { -1 }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_notations_agree() {
        let t = TypeId::A(3);
        let a = parse_word(t, "1 2 -1").unwrap();
        let b = parse_word(t, "s1 s2 s1^-1").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.letters(), &[(1, 1), (2, 1), (1, -1)]);
    }

    #[test]
    fn zero_index_is_rejected_with_position() {
        let t = TypeId::A(3);
        match parse_word(t, "1 0 2") {
            Err(Error::WordParse { pos, msg }) => {
                assert_eq!(pos, 2);
                assert!(msg.contains("start at 1"));
            }
            other => panic!("expected WordParse, got {:?}", other),
        }
        match parse_word(t, "s1 s0") {
            Err(Error::WordParse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("expected WordParse, got {:?}", other),
        }
    }

    #[test]
    fn garbage_reports_its_position() {
        let t = TypeId::A(3);
        match parse_word(t, "1 2 sigma3") {
            Err(Error::WordParse { pos, msg }) => {
                assert_eq!(pos, 3);
                assert!(msg.contains("sigma3"), "{}", msg);
            }
            other => panic!("expected WordParse, got {:?}", other),
        }
        assert!(matches!(
            parse_word(t, "s2^3"),
            Err(Error::WordParse { pos: 1, .. })
        ));
    }

    #[test]
    fn out_of_range_index_is_structural() {
        assert!(matches!(
            parse_word(TypeId::A(2), "3"),
            Err(Error::GeneratorOutOfRange { .. })
        ));
    }

    #[test]
    fn empty_text_is_the_empty_word() {
        assert!(parse_word(TypeId::A(2), "  ").unwrap().is_empty());
    }
}
