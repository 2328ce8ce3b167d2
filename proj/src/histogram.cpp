#include "pioucrypt/histogram.hpp"

namespace pioucrypt {

HistogramReport histogram(const RgbImage& image) {
  HistogramReport report;
  report.width = image.width();
  report.height = image.height();
  for (const Channel c : kChannels) {
    auto& bins = report.counts[static_cast<std::size_t>(c)];
    for (const auto px : image.plane(c).data) ++bins[px];
  }
  return report;
}

std::string_view channel_name(Channel c) {
  switch (c) {
    case Channel::kRed: return "red";
    case Channel::kGreen: return "green";
    case Channel::kBlue: return "blue";
  }
  return "?";
}

std::string histogram_csv(const HistogramReport& report) {
  std::string out = "channel,level,count\n";
  for (const Channel c : kChannels) {
    const auto& bins = report.channel(c);
    for (std::size_t level = 0; level < bins.size(); ++level) {
      out += channel_name(c);
      out += ',';
      out += std::to_string(level);
      out += ',';
      out += std::to_string(bins[level]);
      out += '\n';
    }
  }
  return out;
}

}  // namespace pioucrypt
