#include "pmathieu/types.hpp"

#include <array>
#include <utility>

namespace pmathieu {
namespace {

constexpr std::array<std::pair<MethodKind, std::string_view>, 15> kTags{{
    {MethodKind::SeriesA3, "series"},
    {MethodKind::IntegralA4, "integral"},
    {MethodKind::Thm1Int, "thm1"},
    {MethodKind::B1, "b1"},
    {MethodKind::B2, "b2"},
    {MethodKind::B3, "b3"},
    {MethodKind::B4, "b4"},
    {MethodKind::B7, "b7"},
    {MethodKind::Classical, "classical"},
    {MethodKind::Thm1Fractional, "thm1_fractional"},
    {MethodKind::RiemannZeta, "zeta"},
    {MethodKind::ZetaPIntegral, "zeta_p_integral"},
    {MethodKind::ZetaPKSeries, "zeta_p_kseries"},
    {MethodKind::Quadrature, "quadrature"},
    {MethodKind::TermSum, "term_sum"},
}};

}  // namespace

std::string_view method_tag(MethodKind m) noexcept {
  for (const auto& [kind, tag] : kTags) {
    if (kind == m) return tag;
  }
  return "unknown";
}

std::optional<MethodKind> method_from_tag(std::string_view tag) noexcept {
  for (const auto& [kind, t] : kTags) {
    if (t == tag) return kind;
  }
  return std::nullopt;
}

}  // namespace pmathieu
