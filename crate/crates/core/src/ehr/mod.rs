//! EHR data model: coded clinical terms, hospital admissions, patient
//! records, and the cohort machinery built on top of them.

pub mod cohort;
pub mod io;
pub mod synth;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use chrono::{Datelike, Months, NaiveDate};

use crate::error::{Error, Result};

pub type PatientId = String;

/// Maximum number of secondary diagnoses an admission may carry.
pub const MAX_SECONDARY: usize = 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CodeSystem {
    Icd9,
    Icd10,
    Opcs4,
}

impl CodeSystem {
    pub fn as_str(self) -> &'static str {
        match self {
            CodeSystem::Icd9 => "ICD9",
            CodeSystem::Icd10 => "ICD10",
            CodeSystem::Opcs4 => "OPCS4",
        }
    }

    pub fn is_diagnosis(self) -> bool {
        matches!(self, CodeSystem::Icd9 | CodeSystem::Icd10)
    }
}

impl fmt::Display for CodeSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CodeSystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ICD9" => Ok(CodeSystem::Icd9),
            "ICD10" => Ok(CodeSystem::Icd10),
            "OPCS4" => Ok(CodeSystem::Opcs4),
            other => Err(Error::invalid(format!("unknown code system `{other}`"))),
        }
    }
}

/// A coded clinical concept. The (system, code) pair is the unit of
/// vocabulary identity: the same code string under two systems is two
/// distinct terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClinicalTerm {
    system: CodeSystem,
    code: String,
}

impl ClinicalTerm {
    /// Builds a term, validating the code: non-empty, uppercase
    /// alphanumeric, with periods permitted and preserved (e.g. "I50.0").
    pub fn new(system: CodeSystem, code: impl Into<String>) -> Result<Self> {
        let code = code.into();
        if code.is_empty() {
            return Err(Error::invalid("empty clinical code"));
        }
        if !code
            .chars()
            .all(|c| c.is_ascii_uppercase() || c.is_ascii_digit() || c == '.')
        {
            return Err(Error::invalid(format!(
                "invalid clinical code `{code}`: must be uppercase alphanumeric (periods allowed)"
            )));
        }
        Ok(ClinicalTerm { system, code })
    }

    pub fn system(&self) -> CodeSystem {
        self.system
    }

    pub fn code(&self) -> &str {
        &self.code
    }

    /// The term truncated to the first three characters of its code
    /// (chapter-level granularity). Terms with shorter codes are unchanged.
    pub fn truncated(&self) -> ClinicalTerm {
        if self.code.len() <= 3 {
            self.clone()
        } else {
            ClinicalTerm {
                system: self.system,
                code: self.code[..3].to_string(),
            }
        }
    }
}

impl fmt::Display for ClinicalTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.system, self.code)
    }
}

impl FromStr for ClinicalTerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (sys, code) = s
            .split_once(':')
            .ok_or_else(|| Error::invalid(format!("expected SYSTEM:CODE, got `{s}`")))?;
        ClinicalTerm::new(sys.parse()?, code)
    }
}

// Ordering matches the lexicographic order of the `SYSTEM:CODE` display
// string, which is what vocabulary tie-breaking is defined over.
impl Ord for ClinicalTerm {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.system.as_str(), self.code.as_str()).cmp(&(other.system.as_str(), other.code.as_str()))
    }
}

impl PartialOrd for ClinicalTerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sex {
    Female,
    Male,
}

impl Sex {
    pub fn as_str(self) -> &'static str {
        match self {
            Sex::Female => "F",
            Sex::Male => "M",
        }
    }
}

impl fmt::Display for Sex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Sex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "F" => Ok(Sex::Female),
            "M" => Ok(Sex::Male),
            other => Err(Error::invalid(format!("unknown sex `{other}` (expected F or M)"))),
        }
    }
}

/// One hospital admission: a primary diagnosis, up to 15 secondary
/// diagnoses, and any number of procedures, all dated the same day.
#[derive(Debug, Clone, PartialEq)]
pub struct Admission {
    pub patient_id: PatientId,
    pub admit_date: NaiveDate,
    /// Position 0 is the primary cause of admission; the rest are secondary
    /// causes in recorded order. Always ICD9/ICD10 terms.
    pub diagnoses: Vec<ClinicalTerm>,
    /// OPCS4 terms in recorded order.
    pub procedures: Vec<ClinicalTerm>,
}

impl Admission {
    pub fn primary(&self) -> &ClinicalTerm {
        &self.diagnoses[0]
    }

    pub fn secondary(&self) -> &[ClinicalTerm] {
        &self.diagnoses[1..]
    }

    pub fn validate(&self) -> Result<()> {
        if self.diagnoses.is_empty() {
            return Err(Error::invalid(format!(
                "admission {} {}: no primary diagnosis",
                self.patient_id, self.admit_date
            )));
        }
        if self.diagnoses.len() > MAX_SECONDARY + 1 {
            return Err(Error::invalid(format!(
                "admission {} {}: more than {} secondary diagnoses",
                self.patient_id, self.admit_date, MAX_SECONDARY
            )));
        }
        if let Some(t) = self.diagnoses.iter().find(|t| !t.system().is_diagnosis()) {
            return Err(Error::invalid(format!(
                "admission {} {}: diagnosis term {t} is not ICD9/ICD10",
                self.patient_id, self.admit_date
            )));
        }
        if let Some(t) = self.procedures.iter().find(|t| t.system() != CodeSystem::Opcs4) {
            return Err(Error::invalid(format!(
                "admission {} {}: procedure term {t} is not OPCS4",
                self.patient_id, self.admit_date
            )));
        }
        Ok(())
    }
}

/// Demographic attributes of a patient, as carried by the patients file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Demographics {
    pub patient_id: PatientId,
    pub sex: Sex,
    pub birth_year: i32,
    pub recruitment_year: i32,
    pub assessment_centre: String,
}

/// A patient's demographics plus their date-sorted admission history.
#[derive(Debug, Clone, PartialEq)]
pub struct PatientRecord {
    pub patient_id: PatientId,
    pub sex: Sex,
    pub birth_year: i32,
    pub recruitment_year: i32,
    pub assessment_centre: String,
    /// Sorted ascending by `admit_date`.
    pub admissions: Vec<Admission>,
}

impl PatientRecord {
    pub fn new(demo: Demographics, mut admissions: Vec<Admission>) -> Self {
        admissions.sort_by_key(|a| a.admit_date);
        PatientRecord {
            patient_id: demo.patient_id,
            sex: demo.sex,
            birth_year: demo.birth_year,
            recruitment_year: demo.recruitment_year,
            assessment_centre: demo.assessment_centre,
            admissions,
        }
    }

    /// Age in whole years at `date`, computed from the birth year alone
    /// (the data model carries no birth dates).
    pub fn age_at(&self, date: NaiveDate) -> i32 {
        date.year() - self.birth_year
    }

    pub fn demographics(&self) -> Demographics {
        Demographics {
            patient_id: self.patient_id.clone(),
            sex: self.sex,
            birth_year: self.birth_year,
            recruitment_year: self.recruitment_year,
            assessment_centre: self.assessment_centre.clone(),
        }
    }

    /// The stratum key controls are matched on.
    pub fn stratum(&self) -> (String, i32, Sex, i32) {
        (
            self.assessment_centre.clone(),
            self.recruitment_year,
            self.sex,
            self.birth_year,
        )
    }
}

/// Admissions dated strictly before `index_date` minus `gap_months`
/// calendar months. Month arithmetic clamps to month end (six months
/// before Aug 31 is Feb 28/29). Returns a prefix of the date-sorted
/// admission list; empty is legal.
pub fn observation_window(
    patient: &PatientRecord,
    index_date: NaiveDate,
    gap_months: u32,
) -> Result<&[Admission]> {
    let cutoff = index_date
        .checked_sub_months(Months::new(gap_months))
        .ok_or_else(|| {
            Error::invalid(format!(
                "cannot subtract {gap_months} months from {index_date}"
            ))
        })?;
    let end = patient
        .admissions
        .partition_point(|a| a.admit_date < cutoff);
    Ok(&patient.admissions[..end])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn date(y: i32, m: u32, d: u32) -> NaiveDate {
        NaiveDate::from_ymd_opt(y, m, d).unwrap()
    }

    fn term(s: &str) -> ClinicalTerm {
        s.parse().unwrap()
    }

    fn patient_with_admissions(dates: &[NaiveDate]) -> PatientRecord {
        let admissions = dates
            .iter()
            .map(|&d| Admission {
                patient_id: "P1".into(),
                admit_date: d,
                diagnoses: vec![term("ICD10:I10")],
                procedures: vec![],
            })
            .collect();
        PatientRecord {
            patient_id: "P1".into(),
            sex: Sex::Female,
            birth_year: 1950,
            recruitment_year: 2008,
            assessment_centre: "C1".into(),
            admissions,
        }
    }

    #[test]
    fn term_validation() {
        assert!(ClinicalTerm::new(CodeSystem::Icd10, "I50").is_ok());
        assert!(ClinicalTerm::new(CodeSystem::Icd10, "I50.0").is_ok());
        assert!(ClinicalTerm::new(CodeSystem::Icd10, "").is_err());
        assert!(ClinicalTerm::new(CodeSystem::Icd10, "i50").is_err());
        assert!(ClinicalTerm::new(CodeSystem::Icd10, "I 50").is_err());
    }

    #[test]
    fn same_code_two_systems_is_two_terms() {
        let a = term("ICD9:410");
        let b = term("ICD10:410");
        assert_ne!(a, b);
    }

    #[test]
    fn term_order_matches_display_string_order() {
        let mut terms = vec![term("ICD9:001"), term("ICD10:Z99"), term("OPCS4:A01"), term("ICD10:A00")];
        terms.sort();
        let by_string: Vec<String> = {
            let mut s: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
            s.sort();
            s
        };
        let got: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
        assert_eq!(got, by_string);
    }

    #[test]
    fn term_round_trips_through_display() {
        let t = term("OPCS4:K40.1");
        assert_eq!(t.to_string().parse::<ClinicalTerm>().unwrap(), t);
    }

    #[test]
    fn window_boundary_is_strict() {
        // index 2015-01-01, gap 6 -> cutoff 2014-07-01; only the earlier
        // admission survives the strict-< comparison.
        let p = patient_with_admissions(&[date(2014, 6, 30), date(2014, 7, 1)]);
        let w = observation_window(&p, date(2015, 1, 1), 6).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].admit_date, date(2014, 6, 30));
    }

    #[test]
    fn window_clamps_to_month_end() {
        // Six months before Aug 31 clamps to Feb 28; the admission on the
        // clamped boundary itself is excluded.
        let p = patient_with_admissions(&[date(2015, 2, 28)]);
        let w = observation_window(&p, date(2015, 8, 31), 6).unwrap();
        assert!(w.is_empty());
        let p2 = patient_with_admissions(&[date(2015, 2, 27)]);
        let w2 = observation_window(&p2, date(2015, 8, 31), 6).unwrap();
        assert_eq!(w2.len(), 1);
    }

    #[test]
    fn window_of_empty_record_is_empty() {
        let p = patient_with_admissions(&[]);
        assert!(observation_window(&p, date(2015, 1, 1), 6).unwrap().is_empty());
    }

    #[test]
    fn window_is_a_prefix() {
        let dates = [
            date(2010, 1, 1),
            date(2011, 5, 2),
            date(2012, 9, 3),
            date(2014, 12, 31),
        ];
        let p = patient_with_admissions(&dates);
        for gap in [0, 6, 24] {
            let w = observation_window(&p, date(2013, 3, 15), gap).unwrap();
            assert_eq!(w, &p.admissions[..w.len()]);
        }
    }

    #[test]
    fn admission_validation_catches_system_mismatch() {
        let mut adm = Admission {
            patient_id: "P1".into(),
            admit_date: date(2010, 1, 1),
            diagnoses: vec![term("ICD10:I50")],
            procedures: vec![term("OPCS4:K40")],
        };
        assert!(adm.validate().is_ok());
        adm.procedures.push(term("ICD10:I10"));
        assert!(adm.validate().is_err());
        adm.procedures.pop();
        adm.diagnoses.push(term("OPCS4:K40"));
        assert!(adm.validate().is_err());
    }
}
