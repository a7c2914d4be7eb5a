#include "chordlink/gml.hpp"

#include <cctype>
#include <charconv>
#include <memory>
#include <optional>
#include <vector>

#include <fmt/format.h>

namespace chordlink {

GmlError::GmlError(int line, int column, const std::string& what)
    : InputError(fmt::format("GML line {}, column {}: {}", line, column, what)), line_(line), column_(column)
{
}

namespace {

enum class Kind { Number, String, List };

struct Value;
using Pairs = std::vector<std::pair<std::string, Value>>;

struct Value {
    Kind kind = Kind::Number;
    std::string text;  // number token or string contents
    std::string raw;   // exact source text of the value
    std::shared_ptr<Pairs> list;
    int line = 1;
    int column = 1;
};

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    Pairs parse_document()
    {
        Pairs top = parse_pairs(false);
        skip_space();
        if (pos_ < s_.size())
            fail("unexpected ']'");
        return top;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw GmlError(line_, col_, what); }

    void advance()
    {
        if (s_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_space()
    {
        while (pos_ < s_.size()) {
            const char c = s_[pos_];
            if (c == '#') {
                while (pos_ < s_.size() && s_[pos_] != '\n')
                    advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    Pairs parse_pairs(bool nested)
    {
        Pairs out;
        while (true) {
            skip_space();
            if (pos_ >= s_.size()) {
                if (nested)
                    fail("unterminated list, expected ']'");
                return out;
            }
            if (s_[pos_] == ']') {
                if (!nested)
                    return out;
                advance();
                return out;
            }
            const int kl = line_, kc = col_;
            if (!std::isalpha(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != '_')
                fail(fmt::format("expected a key, found '{}'", s_[pos_]));
            std::string key;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
                key.push_back(s_[pos_]);
                advance();
            }
            skip_space();
            if (pos_ >= s_.size())
                throw GmlError(kl, kc, "key '" + key + "' has no value");
            out.emplace_back(std::move(key), parse_value());
        }
    }

    Value parse_value()
    {
        Value v;
        v.line = line_;
        v.column = col_;
        const std::size_t begin = pos_;
        const char c = s_[pos_];
        if (c == '[') {
            advance();
            v.kind = Kind::List;
            v.list = std::make_shared<Pairs>(parse_pairs(true));
        } else if (c == '"') {
            advance();
            v.kind = Kind::String;
            while (pos_ < s_.size() && s_[pos_] != '"') {
                v.text.push_back(s_[pos_]);
                advance();
            }
            if (pos_ >= s_.size())
                throw GmlError(v.line, v.column, "unterminated string");
            advance();
        } else if (c == '-' || c == '+' || c == '.' || std::isdigit(static_cast<unsigned char>(c))) {
            v.kind = Kind::Number;
            while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) &&
                   s_[pos_] != '[' && s_[pos_] != ']') {
                v.text.push_back(s_[pos_]);
                advance();
            }
            double d = 0.0;
            const char* first = v.text.data();
            const char* last = first + v.text.size();
            if (*first == '+')
                ++first;
            auto [ptr, ec] = std::from_chars(first, last, d);
            if (ec != std::errc() || ptr != last)
                throw GmlError(v.line, v.column, "malformed number '" + v.text + "'");
        } else {
            fail(fmt::format("unexpected character '{}'", c));
        }
        v.raw = std::string(s_.substr(begin, pos_ - begin));
        return v;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

double number_of(const Value& v, const char* key)
{
    if (v.kind != Kind::Number)
        throw GmlError(v.line, v.column, fmt::format("'{}' must be numeric", key));
    const char* first = v.text.data();
    if (*first == '+')
        ++first;
    double d = 0.0;
    std::from_chars(first, v.text.data() + v.text.size(), d);
    return d;
}

std::string scalar_of(const Value& v, const char* key)
{
    if (v.kind == Kind::List)
        throw GmlError(v.line, v.column, fmt::format("'{}' must be a scalar", key));
    return v.text;
}

}  // namespace

Graph parse_gml(std::string_view text)
{
    Parser parser(text);
    const Pairs top = parser.parse_document();
    const Value* graph = nullptr;
    for (const auto& [k, v] : top) {
        if (k == "graph" && v.kind == Kind::List) {
            graph = &v;
            break;
        }
    }
    if (!graph)
        throw GmlError(1, 1, "no 'graph [ ... ]' record");

    GraphBuilder builder;
    struct PendingEdge {
        std::string source, target, label;
        double weight;
        PassThrough extra;
        int line, column;
    };
    std::vector<PendingEdge> edges;

    for (const auto& [key, value] : *graph->list) {
        if (value.kind != Kind::List || (key != "node" && key != "edge"))
            continue;
        if (key == "node") {
            std::optional<std::string> id, label;
            PassThrough extra;
            for (const auto& [k, v] : *value.list) {
                if (k == "id" && !id)
                    id = scalar_of(v, "id");
                else if (k == "label" && !label)
                    label = scalar_of(v, "label");
                else
                    extra.emplace_back(k, v.raw);
            }
            if (!id)
                throw GmlError(value.line, value.column, "node without id");
            if (!builder.add_node(*id, label.value_or(*id), std::move(extra)))
                throw GmlError(value.line, value.column, "duplicate node id '" + *id + "'");
        } else {
            std::optional<std::string> source, target, label;
            std::optional<double> weight, val;
            PassThrough extra;
            for (const auto& [k, v] : *value.list) {
                if (k == "source" && !source)
                    source = scalar_of(v, "source");
                else if (k == "target" && !target)
                    target = scalar_of(v, "target");
                else if (k == "weight" && !weight)
                    weight = number_of(v, "weight");
                else if (k == "value" && !val && !weight) {
                    val = number_of(v, "value");
                    extra.emplace_back(k, v.raw);
                } else if (k == "label" && !label)
                    label = scalar_of(v, "label");
                else
                    extra.emplace_back(k, v.raw);
            }
            if (!source || !target)
                throw GmlError(value.line, value.column, "edge needs both source and target");
            // A `value` consumed as the weight is not passed through again.
            if (!weight && val)
                std::erase_if(extra, [](const auto& kv) { return kv.first == "value"; });
            edges.push_back({*source, *target, label.value_or(""), weight.value_or(val.value_or(1.0)),
                             std::move(extra), value.line, value.column});
        }
    }

    for (auto& e : edges) {
        if (!builder.has_node(e.source) || !builder.has_node(e.target))
            throw GmlError(e.line, e.column,
                           "edge endpoint '" + (builder.has_node(e.source) ? e.target : e.source) +
                               "' is not a declared node");
        try {
            builder.add_edge(e.source, e.target, e.weight, std::move(e.label), std::move(e.extra));
        } catch (const InputError& err) {
            throw GmlError(e.line, e.column, err.what());
        }
    }
    return std::move(builder).build();
}

namespace {

bool plain_number(const std::string& s)
{
    if (s.empty())
        return false;
    double d = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), d);
    return ec == std::errc() && ptr == s.data() + s.size();
}

std::string scalar(const std::string& s)
{
    return plain_number(s) ? s : "\"" + s + "\"";
}

}  // namespace

std::string write_gml(const Graph& graph)
{
    std::string out = "graph [\n";
    for (const Node& n : graph.nodes()) {
        out += "  node [\n";
        out += fmt::format("    id {}\n    label \"{}\"\n", scalar(n.id), n.label);
        for (const auto& [k, v] : n.extra)
            out += fmt::format("    {} {}\n", k, v);
        out += "  ]\n";
    }
    for (const Edge& e : graph.edges()) {
        out += "  edge [\n";
        out += fmt::format("    source {}\n    target {}\n    weight {:.17g}\n",
                           scalar(graph.node(e.source).id), scalar(graph.node(e.target).id), e.weight);
        if (!e.label.empty())
            out += fmt::format("    label \"{}\"\n", e.label);
        for (const auto& [k, v] : e.extra)
            out += fmt::format("    {} {}\n", k, v);
        out += "  ]\n";
    }
    out += "]\n";
    return out;
}

}  // namespace chordlink
