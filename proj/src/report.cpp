#include "topicforge/report.hpp"

#include "topicforge/error.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace topicforge {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string svg_open(int width, int height) {
    return fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
        "font-family=\"sans-serif\" font-size=\"12\">\n<rect width=\"{0}\" height=\"{1}\" fill=\"white\"/>\n",
        width, height);
}

}  // namespace

std::string assignments_csv(std::span<const std::uint32_t> assignments) {
    std::string out = "doc_id,cluster\n";
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        out += fmt::format("{},{}\n", i, assignments[i]);
    }
    return out;
}

std::vector<std::uint32_t> parse_assignments_csv(std::string_view content) {
    const auto rows = parse_csv(content);
    if (rows.empty() || rows.front().size() < 2 || rows.front()[0] != "doc_id" || rows.front()[1] != "cluster") {
        throw Error(ErrorKind::Format, "assignments CSV must start with header 'doc_id,cluster'");
    }
    std::vector<std::int64_t> out(rows.size() - 1, -1);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() < 2) {
            throw Error(ErrorKind::Format, fmt::format("assignments CSV row {} has fewer than 2 fields", r));
        }
        std::size_t doc = 0;
        std::uint32_t cluster = 0;
        auto parse = [&](const std::string& s, auto& v) {
            auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc{} || p != s.data() + s.size()) {
                throw Error(ErrorKind::Format, fmt::format("assignments CSV row {}: bad integer '{}'", r, s));
            }
        };
        parse(rows[r][0], doc);
        parse(rows[r][1], cluster);
        if (doc >= out.size() || out[doc] >= 0) {
            throw Error(ErrorKind::Validation, fmt::format("assignments CSV: doc_id {} out of range or repeated", doc));
        }
        out[doc] = cluster;
    }
    return {out.begin(), out.end()};
}

std::string layout_csv(const LowDimLayout& layout) {
    std::string out = "doc_id";
    for (std::size_t c = 0; c < layout.cols; ++c) {
        out += c == 0 ? ",x" : c == 1 ? ",y" : fmt::format(",c{}", c);
    }
    out += '\n';
    for (std::size_t i = 0; i < layout.rows; ++i) {
        out += std::to_string(i);
        for (std::size_t c = 0; c < layout.cols; ++c) {
            out += fmt::format(",{}", layout(i, c));
        }
        out += '\n';
    }
    return out;
}

std::string elbow_csv(const ElbowCurve& curve) {
    std::string out = "k,wcss\n";
    for (std::size_t i = 0; i < curve.k_values.size(); ++i) {
        out += fmt::format("{},{}\n", curve.k_values[i], curve.wcss_values[i]);
    }
    return out;
}

std::string topics_json(const TopicModel& model, std::size_t top_n) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& topic : model.topics) {
        nlohmann::ordered_json t;
        t["cluster"] = topic.cluster_id;
        t["size"] = topic.size;
        t["terms"] = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < std::min(top_n, topic.terms.size()); ++i) {
            t["terms"].push_back({{"term", topic.terms[i].term}, {"score", topic.terms[i].score}});
        }
        arr.push_back(std::move(t));
    }
    return arr.dump(2) + "\n";
}

std::string metrics_json(const MetricsReport& report) {
    nlohmann::ordered_json j;
    j["global_diversity"] = report.global_diversity;
    j["mean_coherence"] = report.mean_coherence;
    j["topics"] = nlohmann::ordered_json::array();
    for (const auto& s : report.per_topic) {
        j["topics"].push_back({{"cluster", s.cluster_id}, {"diversity", s.diversity}, {"coherence", s.coherence}});
    }
    return j.dump(2) + "\n";
}

std::string layout_svg(const LowDimLayout& layout, std::span<const std::uint32_t> assignments) {
    constexpr int kSize = 600;
    constexpr int kMargin = 40;
    std::string out = svg_open(kSize, kSize);
    out += "<text x=\"300\" y=\"20\" text-anchor=\"middle\">Document layout by cluster</text>\n";
    if (layout.rows == 0 || layout.cols < 2) {
        return out + "</svg>\n";
    }
    float min_x = layout(0, 0), max_x = min_x, min_y = layout(0, 1), max_y = min_y;
    for (std::size_t i = 0; i < layout.rows; ++i) {
        min_x = std::min(min_x, layout(i, 0));
        max_x = std::max(max_x, layout(i, 0));
        min_y = std::min(min_y, layout(i, 1));
        max_y = std::max(max_y, layout(i, 1));
    }
    const double sx = max_x > min_x ? (kSize - 2 * kMargin) / double(max_x - min_x) : 1.0;
    const double sy = max_y > min_y ? (kSize - 2 * kMargin) / double(max_y - min_y) : 1.0;
    out += fmt::format("<rect x=\"{0}\" y=\"{0}\" width=\"{1}\" height=\"{1}\" fill=\"none\" stroke=\"#ccc\"/>\n",
                       kMargin, kSize - 2 * kMargin);
    for (std::size_t i = 0; i < layout.rows; ++i) {
        const double x = kMargin + (layout(i, 0) - min_x) * sx;
        const double y = kSize - kMargin - (layout(i, 1) - min_y) * sy;
        const auto c = i < assignments.size() ? assignments[i] : 0u;
        out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"{}\" fill-opacity=\"0.8\"/>\n", x, y,
                           kPalette[c % std::size(kPalette)]);
    }
    return out + "</svg>\n";
}

std::string elbow_svg(const ElbowCurve& curve) {
    constexpr int kWidth = 600, kHeight = 400, kMargin = 50;
    std::string out = svg_open(kWidth, kHeight);
    out += "<text x=\"300\" y=\"20\" text-anchor=\"middle\">Elbow method: WCSS by number of clusters</text>\n";
    if (curve.k_values.empty()) return out + "</svg>\n";
    const double k_lo = double(curve.k_values.front());
    const double k_hi = double(curve.k_values.back());
    const auto [w_lo_it, w_hi_it] = std::minmax_element(curve.wcss_values.begin(), curve.wcss_values.end());
    const double w_lo = std::min(0.0, *w_lo_it);
    const double w_hi = *w_hi_it > w_lo ? *w_hi_it : w_lo + 1.0;
    auto px = [&](double k) { return kMargin + (k - k_lo) / std::max(k_hi - k_lo, 1.0) * (kWidth - 2 * kMargin); };
    auto py = [&](double w) { return kHeight - kMargin - (w - w_lo) / (w_hi - w_lo) * (kHeight - 2 * kMargin); };
    out += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n", kMargin,
                       kHeight - kMargin, kWidth - kMargin);
    out += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n", kMargin,
                       kHeight - kMargin, kMargin);
    std::string points;
    for (std::size_t i = 0; i < curve.k_values.size(); ++i) {
        points += fmt::format("{:.2f},{:.2f} ", px(double(curve.k_values[i])), py(curve.wcss_values[i]));
        out += fmt::format("<text x=\"{:.2f}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
                           px(double(curve.k_values[i])), kHeight - kMargin + 16, curve.k_values[i]);
    }
    out += fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n", points);
    for (std::size_t i = 0; i < curve.k_values.size(); ++i) {
        const bool selected = curve.k_values[i] == curve.selected_k;
        out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"{}\" fill=\"{}\"/>\n", px(double(curve.k_values[i])),
                           py(curve.wcss_values[i]), selected ? 6 : 3, selected ? "#d62728" : "#1f77b4");
    }
    out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">k</text>\n", kWidth / 2, kHeight - 10);
    out += fmt::format("<text x=\"15\" y=\"{}\" transform=\"rotate(-90 15 {})\" text-anchor=\"middle\">WCSS</text>\n",
                       kHeight / 2, kHeight / 2);
    return out + "</svg>\n";
}

std::string topic_bars_svg(const Topic& topic, std::size_t top_n) {
    const std::size_t count = std::min(top_n, topic.terms.size());
    constexpr int kWidth = 500, kBar = 22, kLabel = 140, kTop = 40;
    const int height = kTop + static_cast<int>(count) * kBar + 20;
    std::string out = svg_open(kWidth, height);
    out += fmt::format("<text x=\"{}\" y=\"22\" text-anchor=\"middle\">Topic {} ({} documents)</text>\n", kWidth / 2,
                       topic.cluster_id, topic.size);
    const double max_score = count > 0 ? std::max(topic.terms[0].score, 1e-300) : 1.0;
    for (std::size_t i = 0; i < count; ++i) {
        const int y = kTop + static_cast<int>(i) * kBar;
        const double w = topic.terms[i].score / max_score * (kWidth - kLabel - 70);
        out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n", kLabel - 6, y + 15,
                           xml_escape(topic.terms[i].term));
        out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{:.2f}\" height=\"{}\" fill=\"{}\"/>\n", kLabel, y + 3, w,
                           kBar - 6, kPalette[topic.cluster_id % std::size(kPalette)]);
        out += fmt::format("<text x=\"{:.2f}\" y=\"{}\">{:.4f}</text>\n", kLabel + w + 4, y + 15, topic.terms[i].score);
    }
    return out + "</svg>\n";
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorKind::Io, "cannot write " + path.string());
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
        throw Error(ErrorKind::Io, "write failed for " + path.string());
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::Io, "cannot open " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace topicforge
