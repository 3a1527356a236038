//! Controlled vocabularies.
//!
//! Every vocabulary value has exactly one lowercase kebab-case token. Decoding
//! accepts only those tokens; there is no case folding or aliasing.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// A token that is not part of the named vocabulary.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("`{token}` is not a {vocabulary} value (expected one of: {expected})")]
pub struct VocabError {
    pub vocabulary: VocabId,
    pub token: String,
    pub expected: String,
}

/// Shared surface of every vocabulary enum.
pub trait Vocabulary: Copy + Eq + Ord + fmt::Debug + 'static {
    const ID: VocabId;
    const ALL: &'static [Self];

    fn token(self) -> &'static str;

    fn from_token(token: &str) -> Result<Self, VocabError> {
        Self::ALL
            .iter()
            .copied()
            .find(|v| v.token() == token)
            .ok_or_else(|| VocabError {
                vocabulary: Self::ID,
                token: token.to_string(),
                expected: Self::ALL
                    .iter()
                    .map(|v| v.token())
                    .collect::<Vec<_>>()
                    .join(", "),
            })
    }
}

macro_rules! vocabulary {
    (
        $(#[$meta:meta])*
        $name:ident => $id:ident { $($variant:ident = $token:literal),+ $(,)? }
    ) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum $name {
            $($variant),+
        }

        impl Vocabulary for $name {
            const ID: VocabId = VocabId::$id;
            const ALL: &'static [Self] = &[$($name::$variant),+];

            fn token(self) -> &'static str {
                match self {
                    $($name::$variant => $token),+
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.token())
            }
        }

        impl FromStr for $name {
            type Err = VocabError;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                Self::from_token(s)
            }
        }

        impl Serialize for $name {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                serializer.serialize_str(self.token())
            }
        }
    };
}

/// Names the vocabularies themselves, so registry entries can refer to them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VocabId {
    Likelihood,
    RiskLevel,
    LegalRiskTier,
    BiasCategory,
    Sensitivity,
    MediaType,
    SectionId,
}

impl VocabId {
    pub fn name(self) -> &'static str {
        match self {
            VocabId::Likelihood => "likelihood",
            VocabId::RiskLevel => "risk-level",
            VocabId::LegalRiskTier => "legal-risk-tier",
            VocabId::BiasCategory => "bias-category",
            VocabId::Sensitivity => "sensitivity",
            VocabId::MediaType => "media-type",
            VocabId::SectionId => "section-id",
        }
    }

    /// Canonical tokens of the vocabulary, in declaration order.
    pub fn tokens(self) -> Vec<&'static str> {
        fn all<V: Vocabulary>() -> Vec<&'static str> {
            V::ALL.iter().map(|v| v.token()).collect()
        }
        match self {
            VocabId::Likelihood => all::<Likelihood>(),
            VocabId::RiskLevel => all::<RiskLevel>(),
            VocabId::LegalRiskTier => all::<LegalRiskTier>(),
            VocabId::BiasCategory => all::<BiasCategory>(),
            VocabId::Sensitivity => all::<Sensitivity>(),
            VocabId::MediaType => all::<MediaType>(),
            VocabId::SectionId => all::<SectionId>(),
        }
    }
}

impl fmt::Display for VocabId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

vocabulary! {
    /// Five ordered levels plus `unknown`. `unknown` sorts last and is not
    /// "above" very-high; use [`Likelihood::is_elevated`] for risk decisions.
    Likelihood => Likelihood {
        VeryLow = "very-low",
        Low = "low",
        Medium = "medium",
        High = "high",
        VeryHigh = "very-high",
        Unknown = "unknown",
    }
}

impl Likelihood {
    /// High, very-high, or unknown. Unknown counts as high.
    pub fn is_elevated(self) -> bool {
        matches!(
            self,
            Likelihood::High | Likelihood::VeryHigh | Likelihood::Unknown
        )
    }
}

vocabulary! {
    /// Generic risk level. Ordered low < medium < high.
    RiskLevel => RiskLevel {
        Low = "low",
        Medium = "medium",
        High = "high",
    }
}

vocabulary! {
    /// AI-Act style legal tier. Ordered minimal < limited < high < unacceptable.
    LegalRiskTier => LegalRiskTier {
        Minimal = "minimal",
        Limited = "limited",
        High = "high",
        Unacceptable = "unacceptable",
    }
}

vocabulary! {
    BiasCategory => BiasCategory {
        Sample = "sample",
        Annotator = "annotator",
        Temporal = "temporal",
        Gender = "gender",
        DataDriven = "data-driven",
        Algorithmic = "algorithmic",
        Human = "human",
    }
}

vocabulary! {
    Sensitivity => Sensitivity {
        Low = "low",
        Medium = "medium",
        High = "high",
    }
}

vocabulary! {
    MediaType => MediaType {
        Tabular = "tabular",
        Images = "images",
        Text = "text",
        Signals = "signals",
        Genomic = "genomic",
        Audio = "audio",
        Video = "video",
        Mixed = "mixed",
    }
}

vocabulary! {
    /// The ten datasheet sections, in document order.
    SectionId => SectionId {
        Metadata = "metadata",
        Purpose = "purpose",
        Source = "source",
        Temporal = "temporal",
        Demographics = "demographics",
        Characteristics = "characteristics",
        BiasMitigation = "bias_mitigation",
        PersonalData = "personal_data",
        RiskCompliance = "risk_compliance",
        UsageRestriction = "usage_restriction",
    }
}

impl SectionId {
    /// Human-readable section title.
    pub fn title(self) -> &'static str {
        match self {
            SectionId::Metadata => "Metadata",
            SectionId::Purpose => "Purpose",
            SectionId::Source => "Source Information",
            SectionId::Temporal => "Temporal Information",
            SectionId::Demographics => "Demographic Information",
            SectionId::Characteristics => "Data Characteristics",
            SectionId::BiasMitigation => "Bias Mitigation Methods",
            SectionId::PersonalData => "Personal Data",
            SectionId::RiskCompliance => "Risk and Compliance",
            SectionId::UsageRestriction => "Usage Restriction",
        }
    }
}
