#pragma once

// Plain-text hypothesis files. One `key=value` per line, starting with
// `format=1`:
//
//   format=1                 format=1                format=1
//   family=linear            family=ann              family=tree
//   weights=1.5,-2           topology=2,3,1          input_dim=2
//                            activation=relu         nodes=5
//                            weights=w1,...,w9       node.0=split center=0,0 radius=1 no=1 yes=2
//                                                    node.1=leaf value=10
//                                                    ...

#include <cstddef>
#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "erm/csv.hpp"
#include "erm/hypothesis.hpp"

namespace erm {

inline std::string_view activation_name(Activation g) {
  switch (g) {
    case Activation::Identity: return "identity";
    case Activation::Relu: return "relu";
    case Activation::Sigmoid: return "sigmoid";
  }
  return "identity";
}

inline Activation parse_activation(std::string_view name) {
  if (name == "identity") return Activation::Identity;
  if (name == "relu") return Activation::Relu;
  if (name == "sigmoid") return Activation::Sigmoid;
  throw Error(ErrorCode::InvalidArgument, "unknown activation `" + std::string(name) + "`");
}

inline std::string serialize_hypothesis(const Hypothesis& h) {
  std::ostringstream out;
  out << "format=1\n";
  if (const auto* lin = std::get_if<LinearHypothesis>(&h)) {
    out << "family=linear\nweights=" << format_list(lin->weights()) << '\n';
  } else if (const auto* ann = std::get_if<AnnHypothesis>(&h)) {
    out << "family=ann\ntopology=";
    for (std::size_t k = 0; k < ann->topology().size(); ++k) out << (k ? "," : "") << ann->topology()[k];
    out << "\nactivation=" << activation_name(ann->activation()) << "\nweights=" << format_list(ann->weights())
        << '\n';
  } else {
    const auto& tree = std::get<DecisionTreeHypothesis>(h);
    out << "family=tree\ninput_dim=" << tree.input_dim() << "\nnodes=" << tree.nodes().size() << '\n';
    for (std::size_t i = 0; i < tree.nodes().size(); ++i) {
      const auto& node = tree.nodes()[i];
      out << "node." << i << '=';
      if (node.is_leaf) {
        out << "leaf value=" << format_double(node.value) << '\n';
      } else {
        out << "split center=" << format_list(node.center) << " radius=" << format_double(node.radius)
            << " no=" << node.no_child << " yes=" << node.yes_child << '\n';
      }
    }
  }
  return out.str();
}

namespace detail {

[[noreturn]] inline void bad_model(const std::string& msg) { throw Error(ErrorCode::MalformedModel, msg); }

inline std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  for (auto cell : split(text, ',')) {
    double v = 0.0;
    if (!parse_double(cell, v) || !std::isfinite(v)) bad_model("bad number `" + std::string(cell) + "`");
    out.push_back(v);
  }
  return out;
}

inline std::size_t parse_count(std::string_view text) {
  text = trim(text);
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    bad_model("bad count `" + std::string(text) + "`");
  }
  return v;
}

inline std::map<std::string, std::string, std::less<>> parse_fields(std::string_view text, char pair_sep) {
  std::map<std::string, std::string, std::less<>> fields;
  for (auto item : split(text, pair_sep)) {
    item = trim(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) bad_model("expected key=value, got `" + std::string(item) + "`");
    fields.emplace(std::string(trim(item.substr(0, eq))), std::string(item.substr(eq + 1)));
  }
  return fields;
}

inline const std::string& require(const std::map<std::string, std::string, std::less<>>& fields, std::string_view key) {
  const auto it = fields.find(key);
  if (it == fields.end()) bad_model("missing key `" + std::string(key) + "`");
  return it->second;
}

}  // namespace detail

inline Hypothesis parse_hypothesis(std::string_view text) {
  const auto fields = detail::parse_fields(text, '\n');
  if (detail::require(fields, "format") != "1") detail::bad_model("unsupported format version");
  const auto& family = detail::require(fields, "family");
  if (family == "linear") return LinearHypothesis(detail::parse_number_list(detail::require(fields, "weights")));
  if (family == "ann") {
    std::vector<std::size_t> topo;
    for (auto cell : detail::split(detail::require(fields, "topology"), ',')) topo.push_back(detail::parse_count(cell));
    return AnnHypothesis(std::move(topo), parse_activation(detail::require(fields, "activation")),
                         detail::parse_number_list(detail::require(fields, "weights")));
  }
  if (family == "tree") {
    const auto dim = detail::parse_count(detail::require(fields, "input_dim"));
    const auto count = detail::parse_count(detail::require(fields, "nodes"));
    std::vector<TreeNode> nodes;
    for (std::size_t i = 0; i < count; ++i) {
      const auto& spec = detail::require(fields, "node." + std::to_string(i));
      const auto space = spec.find(' ');
      const std::string_view kind = std::string_view(spec).substr(0, space);
      const auto attrs =
          detail::parse_fields(space == std::string::npos ? std::string_view{} : std::string_view(spec).substr(space), ' ');
      if (kind == "leaf") {
        const auto v = detail::parse_number_list(detail::require(attrs, "value"));
        if (v.size() != 1) detail::bad_model("leaf value must be a single number");
        nodes.push_back(TreeNode::leaf(v[0]));
      } else if (kind == "split") {
        const auto r = detail::parse_number_list(detail::require(attrs, "radius"));
        if (r.size() != 1) detail::bad_model("radius must be a single number");
        nodes.push_back(TreeNode::split(detail::parse_number_list(detail::require(attrs, "center")), r[0],
                                        detail::parse_count(detail::require(attrs, "no")),
                                        detail::parse_count(detail::require(attrs, "yes"))));
      } else {
        detail::bad_model("unknown node kind `" + std::string(kind) + "`");
      }
    }
    return DecisionTreeHypothesis(dim, std::move(nodes));
  }
  detail::bad_model("unknown family `" + family + "`");
}

inline void save_hypothesis(const std::filesystem::path& path, const Hypothesis& h) {
  detail::write_file(path, serialize_hypothesis(h));
}

inline Hypothesis load_hypothesis(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingFile, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_hypothesis(buf.str());
}

}  // namespace erm
