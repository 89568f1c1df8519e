// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

#include "fnkit/template_engine.hpp"

#include <memory>
#include <vector>

namespace fnkit {

using nlohmann::json;

namespace {

struct Node {
    enum class Kind { kText, kVariable, kSection, kInverted } kind = Kind::kText;
    std::string text;  // literal text or binding name
    std::size_t line = 1;
    std::vector<Node> children;
};

class Parser {
public:
    Parser(std::string_view text, std::string_view name) : text_(text), name_(name) {}

    std::vector<Node> parse() {
        std::vector<Node> root;
        std::vector<std::vector<Node>*> stack{&root};
        std::vector<const Node*> open;
        std::size_t pos = 0;
        while (pos < text_.size()) {
            const auto start = text_.find("{{", pos);
            if (start == std::string_view::npos) {
                append_text(*stack.back(), text_.substr(pos));
                break;
            }
            const auto end = text_.find("}}", start + 2);
            if (end == std::string_view::npos) {
                fail(line_of(start), "unterminated tag");
            }
            std::string tag = trim(text_.substr(start + 2, end - start - 2));
            std::size_t tag_begin = start;
            std::size_t tag_end = end + 2;
            const bool block = !tag.empty() && (tag[0] == '#' || tag[0] == '^' || tag[0] == '/');
            if (block) {
                // Standalone block tag: swallow its whole line.
                const auto line_start = text_.rfind('\n', start == 0 ? 0 : start - 1);
                const std::size_t ls = (line_start == std::string_view::npos || start == 0) ? 0 : line_start + 1;
                const auto le = text_.find('\n', tag_end);
                const std::size_t line_end = le == std::string_view::npos ? text_.size() : le;
                if (blank(text_.substr(ls, start - ls)) && blank(text_.substr(tag_end, line_end - tag_end))) {
                    tag_begin = std::max(ls, pos);
                    tag_end = le == std::string_view::npos ? text_.size() : le + 1;
                }
            }
            append_text(*stack.back(), text_.substr(pos, tag_begin - pos));
            const std::size_t line = line_of(start);
            if (tag.empty()) {
                fail(line, "empty tag");
            }
            if (tag[0] == '#' || tag[0] == '^') {
                const std::string name = trim(tag.substr(1));
                check_name(name, line);
                Node section;
                section.kind = tag[0] == '#' ? Node::Kind::kSection : Node::Kind::kInverted;
                section.text = name;
                section.line = line;
                stack.back()->push_back(std::move(section));
                open.push_back(&stack.back()->back());
                stack.push_back(&stack.back()->back().children);
            } else if (tag[0] == '/') {
                const std::string name = trim(tag.substr(1));
                if (open.empty()) {
                    fail(line, "closing tag {{/" + name + "}} without an open block");
                }
                if (open.back()->text != name) {
                    fail(line, "closing tag {{/" + name + "}} does not match {{#" + open.back()->text +
                                   "}} opened on line " + std::to_string(open.back()->line));
                }
                open.pop_back();
                stack.pop_back();
            } else {
                check_name(tag, line);
                Node var;
                var.kind = Node::Kind::kVariable;
                var.text = tag;
                var.line = line;
                stack.back()->push_back(std::move(var));
            }
            pos = tag_end;
        }
        if (!open.empty()) {
            fail(open.back()->line, "block {{#" + open.back()->text + "}} is never closed");
        }
        return root;
    }

    [[noreturn]] void fail(std::size_t line, const std::string& message) const {
        throw Error(ErrorKind::kTemplate, std::string(name_) + ":" + std::to_string(line) + ": " + message);
    }

private:
    static std::string trim(std::string_view s) {
        const auto b = s.find_first_not_of(" \t");
        if (b == std::string_view::npos) return {};
        const auto e = s.find_last_not_of(" \t");
        return std::string(s.substr(b, e - b + 1));
    }

    static bool blank(std::string_view s) { return s.find_first_not_of(" \t\r") == std::string_view::npos; }

    void check_name(const std::string& name, std::size_t line) const {
        if (name.empty() || name.find_first_of(" \t{}#^/") != std::string::npos) {
            fail(line, "malformed tag name \"" + name + "\"");
        }
    }

    std::size_t line_of(std::size_t offset) const {
        std::size_t line = 1;
        for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
            if (text_[i] == '\n') ++line;
        }
        return line;
    }

    static void append_text(std::vector<Node>& nodes, std::string_view text) {
        if (text.empty()) return;
        Node n;
        n.text = std::string(text);
        nodes.push_back(std::move(n));
    }

    std::string_view text_;
    std::string_view name_;
};

class Renderer {
public:
    Renderer(const Parser& parser) : parser_(parser) {}

    void render(const std::vector<Node>& nodes, std::vector<const json*>& scopes, std::string& out) {
        for (const auto& n : nodes) {
            switch (n.kind) {
                case Node::Kind::kText:
                    out += n.text;
                    break;
                case Node::Kind::kVariable: {
                    const json* value = lookup(scopes, n.text);
                    if (value == nullptr) {
                        parser_.fail(n.line, "unbound placeholder {{" + n.text + "}}");
                    }
                    if (value->is_string()) {
                        out += value->get<std::string>();
                    } else if (value->is_number() || value->is_boolean()) {
                        out += value->dump();
                    } else {
                        parser_.fail(n.line, "placeholder {{" + n.text + "}} is bound to a " + value->type_name());
                    }
                    break;
                }
                case Node::Kind::kSection:
                case Node::Kind::kInverted: {
                    const json* value = lookup(scopes, n.text);
                    if (value == nullptr) {
                        parser_.fail(n.line, "unbound block {{#" + n.text + "}}");
                    }
                    const bool inverted = n.kind == Node::Kind::kInverted;
                    if (value->is_array()) {
                        if (inverted) {
                            if (value->empty()) render(n.children, scopes, out);
                            break;
                        }
                        for (const auto& item : *value) {
                            scopes.push_back(&item);
                            render(n.children, scopes, out);
                            scopes.pop_back();
                        }
                    } else if (value->is_boolean()) {
                        if (value->get<bool>() != inverted) render(n.children, scopes, out);
                    } else {
                        parser_.fail(n.line, "block {{#" + n.text + "}} needs a list or boolean binding, got " +
                                                 value->type_name());
                    }
                    break;
                }
            }
        }
    }

private:
    static const json* lookup(const std::vector<const json*>& scopes, const std::string& name) {
        for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
            if ((*it)->is_object()) {
                auto found = (*it)->find(name);
                if (found != (*it)->end()) return &*found;
            }
        }
        return nullptr;
    }

    const Parser& parser_;
};

}  // namespace

std::string render_template(std::string_view text, const json& context, std::string_view template_name) {
    Parser parser(text, template_name);
    const auto nodes = parser.parse();
    std::vector<const json*> scopes{&context};
    std::string out;
    Renderer(parser).render(nodes, scopes, out);
    return out;
}

}  // namespace fnkit
