//! AP-style format checks for dates, times and numbers.
//!
//! All three checks run over Treebank tokens. Recognizers are conservative:
//! anything that does not match the small grammar below is ignored rather
//! than guessed at.
//!
//! Dates: `Month Day [, Year]` or `Month [,] Year`, where Month is a
//! capitalized month name or abbreviation. A phrase is one violation when
//!
//! - a month with a specific day is spelled out but AP abbreviates it
//!   (January, February, August, September, October, November, December),
//! - a month with a specific day uses an abbreviation AP does not use
//!   (`Mar.`, `Sep.`, `Jun`, ...),
//! - a month with only a year is abbreviated, or
//! - a month with only a year is separated from it by a comma, or
//! - an abbreviated weekday (`Tues.`, `Wed`) is followed by a month.
//!
//! Times: a numeral (`8`, `10:30`) or number word (`eight`) followed by a
//! meridiem (`a.m.`, `PM`, `am`, ...), or an attached form like `8pm`. A
//! phrase is one violation when the meridiem is not exactly `a.m.`/`p.m.`
//! or the hour is spelled out.
//!
//! Numbers: a standalone single-digit numeral, or a spelled-out number of
//! ten or more, outside any recognized date or time phrase.

use std::sync::OnceLock;

use regex::Regex;

use crate::segment::{fold_homoglyphs, tokenize_words};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ApCounts {
    pub date: usize,
    pub time: usize,
    pub number: usize,
}

impl std::ops::AddAssign for ApCounts {
    fn add_assign(&mut self, rhs: Self) {
        self.date += rhs.date;
        self.time += rhs.time;
        self.number += rhs.number;
    }
}

const MONTHS: [&str; 12] = [
    "january", "february", "march", "april", "may", "june", "july", "august", "september",
    "october", "november", "december",
];
/// Months AP abbreviates when used with a specific date.
const AP_ABBREVIATED: [usize; 7] = [0, 1, 7, 8, 9, 10, 11];
const AP_ABBREVIATIONS: [&str; 7] = ["jan.", "feb.", "aug.", "sept.", "oct.", "nov.", "dec."];
const OTHER_ABBREVIATIONS: [&str; 17] = [
    "mar.", "apr.", "jun.", "jul.", "sep.", "jan", "feb", "mar", "apr", "jun", "jul", "aug",
    "sep", "sept", "oct", "nov", "dec",
];

const WEEKDAY_ABBREVIATIONS: [&str; 11] = [
    "mon", "tue", "tues", "wed", "thu", "thur", "thurs", "fri", "sat", "sun", "weds",
];

const HOUR_WORDS: [&str; 12] = [
    "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten", "eleven",
    "twelve",
];
const ONES: [&str; 9] = ["one", "two", "three", "four", "five", "six", "seven", "eight", "nine"];
const TEENS: [&str; 10] = [
    "ten", "eleven", "twelve", "thirteen", "fourteen", "fifteen", "sixteen", "seventeen",
    "eighteen", "nineteen",
];
const TENS: [&str; 8] = [
    "twenty", "thirty", "forty", "fifty", "sixty", "seventy", "eighty", "ninety",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MonthForm {
    Full(usize),
    ApAbbreviation,
    OtherAbbreviation,
}

impl MonthForm {
    fn is_abbreviation(self) -> bool {
        !matches!(self, MonthForm::Full(_))
    }
}

fn month_form(token: &str) -> Option<MonthForm> {
    if !token.chars().next().is_some_and(char::is_uppercase) {
        return None;
    }
    let lower = token.to_lowercase();
    if let Some(i) = MONTHS.iter().position(|m| *m == lower) {
        return Some(MonthForm::Full(i));
    }
    if AP_ABBREVIATIONS.contains(&lower.as_str()) {
        return Some(MonthForm::ApAbbreviation);
    }
    if OTHER_ABBREVIATIONS.contains(&lower.as_str()) {
        return Some(MonthForm::OtherAbbreviation);
    }
    None
}

fn is_weekday_abbreviation(token: &str) -> bool {
    token.chars().next().is_some_and(char::is_uppercase)
        && WEEKDAY_ABBREVIATIONS.contains(&token.trim_end_matches('.').to_lowercase().as_str())
}

fn day_value(token: &str) -> Option<u32> {
    let digits = token.trim_end_matches(|c: char| c.is_ascii_alphabetic());
    let suffix = &token[digits.len()..];
    if digits.is_empty() || digits.len() > 2 || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if !matches!(suffix.to_ascii_lowercase().as_str(), "" | "st" | "nd" | "rd" | "th") {
        return None;
    }
    let v: u32 = digits.parse().ok()?;
    (1..=31).contains(&v).then_some(v)
}

fn is_year(token: &str) -> bool {
    token.len() == 4
        && token.bytes().all(|b| b.is_ascii_digit())
        && matches!(token.as_bytes()[0], b'1' | b'2')
}

/// Some(true) when the token is a meridiem in exact AP form.
fn meridiem(token: &str) -> Option<bool> {
    let squashed: String = token.chars().filter(|&c| c != '.').collect::<String>().to_lowercase();
    match squashed.as_str() {
        "am" | "pm" => Some(token == "a.m." || token == "p.m."),
        _ => None,
    }
}

fn numeric_hour(token: &str) -> bool {
    static RE: OnceLock<Regex> = OnceLock::new();
    let re = RE.get_or_init(|| Regex::new(r"^(\d{1,2})(:[0-5]\d)?$").unwrap());
    re.captures(token)
        .and_then(|c| c[1].parse::<u32>().ok())
        .is_some_and(|h| h <= 12)
}

fn attached_time(token: &str) -> Option<bool> {
    static RE: OnceLock<Regex> = OnceLock::new();
    let re = RE.get_or_init(|| Regex::new(r"^(\d{1,2})(:[0-5]\d)?([aApP]\.?[mM]\.?)$").unwrap());
    let caps = re.captures(token)?;
    let hour: u32 = caps[1].parse().ok()?;
    if hour > 12 {
        return None;
    }
    let m = &caps[3];
    Some(m == "a.m." || m == "p.m.")
}

fn spelled_ten_or_more(lower: &str) -> bool {
    if TEENS.contains(&lower) || TENS.contains(&lower) {
        return true;
    }
    match lower.split_once('-') {
        Some((tens, ones)) => TENS.contains(&tens) && ONES.contains(&ones),
        None => false,
    }
}

/// Runs all three recognizers over one token sequence.
pub fn scan_tokens<S: AsRef<str>>(tokens: &[S]) -> ApCounts {
    let toks: Vec<&str> = tokens.iter().map(AsRef::as_ref).collect();
    let mut exempt = vec![false; toks.len()];
    let mut counts = ApCounts::default();

    // dates
    for (i, tok) in toks.iter().enumerate() {
        if !is_weekday_abbreviation(tok) {
            continue;
        }
        let mut j = i + 1;
        while toks.get(j).is_some_and(|t| *t == "." || *t == ",") && j < i + 3 {
            j += 1;
        }
        if toks.get(j).is_some_and(|t| month_form(t).is_some()) {
            counts.date += 1;
        }
    }
    let mut i = 0;
    while i < toks.len() {
        let Some(form) = month_form(toks[i]) else {
            i += 1;
            continue;
        };
        let next = toks.get(i + 1).copied();
        if next.and_then(day_value).is_some() {
            exempt[i + 1] = true;
            let mut end = i + 2;
            if toks.get(i + 2) == Some(&",") && toks.get(i + 3).is_some_and(|t| is_year(t)) {
                exempt[i + 3] = true;
                end = i + 4;
            } else if toks.get(i + 2).is_some_and(|t| is_year(t)) {
                exempt[i + 2] = true;
                end = i + 3;
            }
            let violates = match form {
                MonthForm::Full(m) => AP_ABBREVIATED.contains(&m),
                MonthForm::OtherAbbreviation => true,
                MonthForm::ApAbbreviation => false,
            };
            counts.date += usize::from(violates);
            i = end;
        } else if next.is_some_and(is_year) {
            exempt[i + 1] = true;
            counts.date += usize::from(form.is_abbreviation());
            i += 2;
        } else if next == Some(",") && toks.get(i + 2).is_some_and(|t| is_year(t)) {
            exempt[i + 2] = true;
            counts.date += 1;
            i += 3;
        } else {
            i += 1;
        }
    }

    // times
    for i in 0..toks.len() {
        if exempt[i] {
            continue;
        }
        if let Some(ok) = attached_time(toks[i]) {
            exempt[i] = true;
            counts.time += usize::from(!ok);
            continue;
        }
        let Some(exact) = toks.get(i + 1).and_then(|t| meridiem(t)) else {
            continue;
        };
        let lower = toks[i].to_lowercase();
        let spelled = HOUR_WORDS.contains(&lower.as_str());
        if numeric_hour(toks[i]) || spelled {
            exempt[i] = true;
            counts.time += usize::from(!exact || spelled);
        }
    }

    // numbers
    for (i, tok) in toks.iter().enumerate() {
        if exempt[i] {
            continue;
        }
        if tok.len() == 1 && tok.as_bytes()[0].is_ascii_digit() {
            counts.number += 1;
        } else if spelled_ten_or_more(&tok.to_lowercase()) {
            counts.number += 1;
        }
    }
    counts
}

fn scan_text(text: &str) -> ApCounts {
    let folded = fold_homoglyphs(text);
    let mut total = ApCounts::default();
    for line in folded.split('\n') {
        total += scan_tokens(&tokenize_words(line));
    }
    total
}

pub fn count_date_violations(text: &str) -> usize {
    scan_text(text).date
}

pub fn count_time_violations(text: &str) -> usize {
    scan_text(text).time
}

pub fn count_number_violations(text: &str) -> usize {
    scan_text(text).number
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dates() {
        assert_eq!(count_date_violations("Jan. 5, 2021"), 0);
        assert_eq!(count_date_violations("January 5, 2021"), 1);
        assert_eq!(count_date_violations("January, 2021"), 1);
        assert_eq!(count_date_violations("January 2021"), 0);
        assert_eq!(count_date_violations("Jan. 2021"), 1);
        assert_eq!(count_date_violations("Sep. 9"), 1);
        assert_eq!(count_date_violations("Sept. 9"), 0);
        assert_eq!(count_date_violations("March 3"), 0);
        assert_eq!(count_date_violations("Mar. 3"), 1);
        assert_eq!(count_date_violations("we may 5 times"), 0);
        assert_eq!(count_date_violations("in January"), 0);
    }

    #[test]
    fn times() {
        assert_eq!(count_time_violations("8 p.m."), 0);
        assert_eq!(count_time_violations("8 PM"), 1);
        assert_eq!(count_time_violations("eight p.m."), 1);
        assert_eq!(count_time_violations("10:30 a.m. and 11pm"), 1);
        assert_eq!(count_time_violations("I am here"), 0);
    }

    #[test]
    fn numbers() {
        assert_eq!(count_number_violations("He bought 5 apples."), 1);
        assert_eq!(count_number_violations("He bought five apples and 12 pears."), 0);
        assert_eq!(count_number_violations("The meeting is Jan. 5."), 0);
        assert_eq!(count_number_violations("twenty-five people and thirteen dogs"), 2);
        assert_eq!(count_number_violations("at 8 p.m."), 0);
    }

    #[test]
    fn counts_add_across_lines() {
        let t = "January 5, 2021 at 8 PM.\nJanuary 5, 2021 at 8 PM.";
        assert_eq!(scan_text(t), ApCounts { date: 2, time: 2, number: 0 });
    }
}
