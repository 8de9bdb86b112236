#ifndef STEREOGRAPH_ORDINAL_HPP
#define STEREOGRAPH_ORDINAL_HPP

#include <optional>
#include <string>
#include <string_view>

namespace stereograph {

// Qualitative rating on a three-level scale. Unspecified is not a level:
// it is incomparable and never satisfies a threshold comparison.
enum class Ordinal { Unspecified, Low, Medium, High };

constexpr int ordinal_rank(Ordinal o) {
  switch (o) {
    case Ordinal::Low: return 1;
    case Ordinal::Medium: return 2;
    case Ordinal::High: return 3;
    case Ordinal::Unspecified: return 0;
  }
  return 0;
}

constexpr bool ordinal_at_least(Ordinal a, Ordinal b) {
  if (a == Ordinal::Unspecified || b == Ordinal::Unspecified) return false;
  return ordinal_rank(a) >= ordinal_rank(b);
}

constexpr bool ordinal_at_most(Ordinal a, Ordinal b) {
  if (a == Ordinal::Unspecified || b == Ordinal::Unspecified) return false;
  return ordinal_rank(a) <= ordinal_rank(b);
}

std::string_view to_string(Ordinal o);
std::optional<Ordinal> ordinal_from_string(std::string_view text);

// Annotation that may be affirmed, denied, or simply not known.
enum class TriState { Unknown, True, False };

std::string_view to_string(TriState t);
std::optional<TriState> tristate_from_string(std::string_view text);

enum class StatisticalBasis { Unknown, Supported, Unsupported };

std::string_view to_string(StatisticalBasis b);
std::optional<StatisticalBasis> statistical_basis_from_string(std::string_view text);

enum class ProvenanceCategory { Unknown, Media, Political, Religious, Scientific, Folklore };

std::string_view to_string(ProvenanceCategory c);
std::optional<ProvenanceCategory> provenance_from_string(std::string_view text);

enum class Modality { Text, Image, Audio, Video };

std::string_view to_string(Modality m);
std::optional<Modality> modality_from_string(std::string_view text);

}  // namespace stereograph

#endif  // STEREOGRAPH_ORDINAL_HPP
