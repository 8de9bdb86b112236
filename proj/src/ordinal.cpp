#include "stereograph/ordinal.hpp"

namespace stereograph {

std::string_view to_string(Ordinal o) {
  switch (o) {
    case Ordinal::Low: return "low";
    case Ordinal::Medium: return "medium";
    case Ordinal::High: return "high";
    case Ordinal::Unspecified: return "unspecified";
  }
  return "unspecified";
}

std::optional<Ordinal> ordinal_from_string(std::string_view text) {
  if (text == "low") return Ordinal::Low;
  if (text == "medium") return Ordinal::Medium;
  if (text == "high") return Ordinal::High;
  if (text == "unspecified") return Ordinal::Unspecified;
  return std::nullopt;
}

std::string_view to_string(TriState t) {
  switch (t) {
    case TriState::True: return "true";
    case TriState::False: return "false";
    case TriState::Unknown: return "unknown";
  }
  return "unknown";
}

std::optional<TriState> tristate_from_string(std::string_view text) {
  if (text == "true") return TriState::True;
  if (text == "false") return TriState::False;
  if (text == "unknown") return TriState::Unknown;
  return std::nullopt;
}

std::string_view to_string(StatisticalBasis b) {
  switch (b) {
    case StatisticalBasis::Supported: return "supported";
    case StatisticalBasis::Unsupported: return "unsupported";
    case StatisticalBasis::Unknown: return "unknown";
  }
  return "unknown";
}

std::optional<StatisticalBasis> statistical_basis_from_string(std::string_view text) {
  if (text == "supported") return StatisticalBasis::Supported;
  if (text == "unsupported") return StatisticalBasis::Unsupported;
  if (text == "unknown") return StatisticalBasis::Unknown;
  return std::nullopt;
}

std::string_view to_string(ProvenanceCategory c) {
  switch (c) {
    case ProvenanceCategory::Media: return "media";
    case ProvenanceCategory::Political: return "political";
    case ProvenanceCategory::Religious: return "religious";
    case ProvenanceCategory::Scientific: return "scientific";
    case ProvenanceCategory::Folklore: return "folklore";
    case ProvenanceCategory::Unknown: return "unknown";
  }
  return "unknown";
}

std::optional<ProvenanceCategory> provenance_from_string(std::string_view text) {
  if (text == "media") return ProvenanceCategory::Media;
  if (text == "political") return ProvenanceCategory::Political;
  if (text == "religious") return ProvenanceCategory::Religious;
  if (text == "scientific") return ProvenanceCategory::Scientific;
  if (text == "folklore") return ProvenanceCategory::Folklore;
  if (text == "unknown") return ProvenanceCategory::Unknown;
  return std::nullopt;
}

std::string_view to_string(Modality m) {
  switch (m) {
    case Modality::Text: return "text";
    case Modality::Image: return "image";
    case Modality::Audio: return "audio";
    case Modality::Video: return "video";
  }
  return "text";
}

std::optional<Modality> modality_from_string(std::string_view text) {
  if (text == "text") return Modality::Text;
  if (text == "image") return Modality::Image;
  if (text == "audio") return Modality::Audio;
  if (text == "video") return Modality::Video;
  return std::nullopt;
}

}  // namespace stereograph
