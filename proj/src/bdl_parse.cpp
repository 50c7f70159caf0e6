#include <cctype>
#include <optional>
#include <utility>

#include "selfc/bdl.hpp"

namespace selfc::bdl {

std::string format(const Diagnostic& diagnostic, std::string_view file) {
    std::string out(file);
    out += ':';
    out += std::to_string(diagnostic.span.line);
    out += ':';
    out += std::to_string(diagnostic.span.column);
    out += ": ";
    out += diagnostic.severity == Severity::Error ? "error" : "warning";
    out += '[';
    out += diagnostic.code;
    out += "]: ";
    out += diagnostic.message;
    return out;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
    for (const auto& d : diagnostics) {
        if (d.severity == Severity::Error) return true;
    }
    return false;
}

namespace {

enum class TokenKind {
    Name,
    LBrace,
    RBrace,
    Colon,
    KwBehavior,
    KwExtends,
    KwRefine,
    KwTrait,
    KwAdd,
    KwBefore,
    KwAfter,
    KwUpdate,
    KwDelete,
    KwMap,
    KwWith,
    KwAssign,
    KwApply,
    KwNull,
    End,
    Bad,
};

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;
    SourceSpan span;
};

std::optional<TokenKind> keyword(std::string_view word) {
    if (word == "behavior") return TokenKind::KwBehavior;
    if (word == "extends") return TokenKind::KwExtends;
    if (word == "refine") return TokenKind::KwRefine;
    if (word == "trait") return TokenKind::KwTrait;
    if (word == "add") return TokenKind::KwAdd;
    if (word == "before") return TokenKind::KwBefore;
    if (word == "after") return TokenKind::KwAfter;
    if (word == "update") return TokenKind::KwUpdate;
    if (word == "delete") return TokenKind::KwDelete;
    if (word == "map") return TokenKind::KwMap;
    if (word == "with") return TokenKind::KwWith;
    if (word == "assign") return TokenKind::KwAssign;
    if (word == "apply") return TokenKind::KwApply;
    if (word == "null") return TokenKind::KwNull;
    return std::nullopt;
}

bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Names may be dot-qualified ("User.getName"); positions that require an
// unqualified identifier reject the dot during parsing.
std::vector<Token> tokenize(std::string_view source) {
    std::vector<Token> tokens;
    int line = 1;
    int column = 1;
    std::size_t i = 0;

    auto advance = [&](std::size_t count) {
        for (std::size_t k = 0; k < count; ++k, ++i) {
            if (source[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
    };

    while (i < source.size()) {
        char c = source[i];
        if (c == '#') {
            while (i < source.size() && source[i] != '\n') advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        SourceSpan span{line, column, i, i};
        if (c == '{' || c == '}' || c == ':') {
            span.end = i + 1;
            TokenKind kind = c == '{'   ? TokenKind::LBrace
                             : c == '}' ? TokenKind::RBrace
                                        : TokenKind::Colon;
            tokens.push_back(Token{kind, std::string(1, c), span});
            advance(1);
            continue;
        }
        if (name_start(c)) {
            std::size_t start = i;
            while (i < source.size() && name_char(source[i])) advance(1);
            // Absorb ".segment" continuations into one qualified name.
            while (i + 1 < source.size() && source[i] == '.' && name_start(source[i + 1])) {
                advance(1);
                while (i < source.size() && name_char(source[i])) advance(1);
            }
            span.end = i;
            std::string text(source.substr(start, i - start));
            auto kw = text.find('.') == std::string::npos ? keyword(text) : std::nullopt;
            tokens.push_back(Token{kw.value_or(TokenKind::Name), std::move(text), span});
            continue;
        }
        span.end = i + 1;
        tokens.push_back(Token{TokenKind::Bad, std::string(1, c), span});
        advance(1);
    }
    tokens.push_back(Token{TokenKind::End, "", SourceSpan{line, column, i, i}});
    return tokens;
}

bool is_refinement_keyword(TokenKind kind) {
    switch (kind) {
        case TokenKind::KwAdd:
        case TokenKind::KwBefore:
        case TokenKind::KwAfter:
        case TokenKind::KwUpdate:
        case TokenKind::KwDelete:
        case TokenKind::KwMap:
        case TokenKind::KwAssign:
        case TokenKind::KwApply:
            return true;
        default:
            return false;
    }
}

bool is_decl_keyword(TokenKind kind) {
    return kind == TokenKind::KwBehavior || kind == TokenKind::KwTrait ||
           kind == TokenKind::KwRefine;
}

// Thrown on a syntax error after the diagnostic is recorded; caught at the
// nearest statement boundary to resume parsing.
struct Bail {};

class Parser {
public:
    explicit Parser(std::string_view source) : tokens_(tokenize(source)) {}

    ParseResult run() {
        ParseResult result;
        while (!at(TokenKind::End)) {
            try {
                if (at(TokenKind::KwBehavior)) {
                    result.ast.decls.emplace_back(parse_behavior());
                } else if (at(TokenKind::KwTrait)) {
                    result.ast.decls.emplace_back(parse_trait());
                } else if (at(TokenKind::KwRefine)) {
                    result.ast.decls.emplace_back(parse_refine());
                } else {
                    error("expected a declaration (behavior, trait, or refine)");
                }
            } catch (const Bail&) {
                recover_to_decl();
            }
        }
        result.diagnostics = std::move(diagnostics_);
        return result;
    }

private:
    const Token& current() const { return tokens_[pos_]; }
    bool at(TokenKind kind) const { return current().kind == kind; }

    Token take() { return tokens_[pos_++]; }

    [[noreturn]] void error(const std::string& message) {
        diagnostics_.push_back(
            Diagnostic{Severity::Error, "SyntaxError", message, current().span});
        throw Bail{};
    }

    Token expect(TokenKind kind, const char* what) {
        if (!at(kind)) error(std::string("expected ") + what);
        return take();
    }

    // Any name token, qualified or not.
    Token expect_name(const char* what) { return expect(TokenKind::Name, what); }

    // A name token without dot qualification.
    Token expect_plain_name(const char* what) {
        auto token = expect_name(what);
        if (token.text.find('.') != std::string::npos) {
            diagnostics_.push_back(Diagnostic{Severity::Error, "SyntaxError",
                                              std::string(what) +
                                                  " must be an unqualified name, got \"" +
                                                  token.text + "\"",
                                              token.span});
            throw Bail{};
        }
        return token;
    }

    void recover_to_decl() {
        while (!at(TokenKind::End) && !is_decl_keyword(current().kind)) take();
    }

    void recover_in_block() {
        while (!at(TokenKind::End) && !at(TokenKind::RBrace) &&
               !is_refinement_keyword(current().kind) && !is_decl_keyword(current().kind)) {
            take();
        }
    }

    StepRef parse_stepref() {
        if (at(TokenKind::KwBehavior)) {
            auto kw = take();
            auto name = expect_name("behavior name");
            return StepRef{name.text, true, SourceSpan{kw.span.line, kw.span.column,
                                                       kw.span.begin, name.span.end}};
        }
        auto name = expect_plain_name("step name");
        return StepRef{name.text, false, name.span};
    }

    std::vector<Refinement> parse_refinement_block() {
        std::vector<Refinement> refinements;
        expect(TokenKind::LBrace, "\"{\"");
        while (!at(TokenKind::RBrace)) {
            if (at(TokenKind::End)) error("unterminated block, expected \"}\"");
            if (is_decl_keyword(current().kind)) {
                // A new declaration here means the closing brace is missing.
                diagnostics_.push_back(Diagnostic{Severity::Error, "SyntaxError",
                                                  "missing \"}\" before next declaration",
                                                  current().span});
                return refinements;
            }
            try {
                refinements.push_back(parse_refinement());
            } catch (const Bail&) {
                recover_in_block();
            }
        }
        take();  // }
        return refinements;
    }

    Refinement parse_refinement() {
        Refinement r;
        auto kw = take();
        r.span = kw.span;
        auto close = [&](SourceSpan last) { r.span.end = last.end; };
        switch (kw.kind) {
            case TokenKind::KwAdd: {
                r.kind = Refinement::Kind::Add;
                r.step = parse_stepref();
                close(r.step->span);
                break;
            }
            case TokenKind::KwBefore:
            case TokenKind::KwAfter: {
                r.kind = kw.kind == TokenKind::KwBefore ? Refinement::Kind::Before
                                                        : Refinement::Kind::After;
                r.anchor = expect_plain_name("anchor step name").text;
                r.step = parse_stepref();
                close(r.step->span);
                break;
            }
            case TokenKind::KwUpdate: {
                r.kind = Refinement::Kind::Update;
                r.anchor = expect_plain_name("anchor step name").text;
                r.step = parse_stepref();
                close(r.step->span);
                break;
            }
            case TokenKind::KwDelete: {
                r.kind = Refinement::Kind::Delete;
                auto anchor = expect_plain_name("anchor step name");
                r.anchor = anchor.text;
                close(anchor.span);
                break;
            }
            case TokenKind::KwMap: {
                r.kind = Refinement::Kind::Map;
                r.anchor = expect_plain_name("anchor step name").text;
                expect(TokenKind::KwWith, "\"with\"");
                auto wrapper = expect_plain_name("wrapper name");
                r.wrapper = wrapper.text;
                close(wrapper.span);
                break;
            }
            case TokenKind::KwAssign: {
                r.kind = Refinement::Kind::Assign;
                auto target = expect_plain_name("trait name");
                r.target = target.text;
                close(target.span);
                break;
            }
            case TokenKind::KwApply: {
                r.kind = Refinement::Kind::Apply;
                auto target = expect_plain_name("refinement name");
                r.target = target.text;
                close(target.span);
                break;
            }
            default:
                --pos_;  // re-point at the offender
                error("expected a refinement (add, before, after, update, delete, map, "
                      "assign, or apply)");
        }
        return r;
    }

    BehaviorDecl parse_behavior() {
        BehaviorDecl decl;
        decl.span = take().span;  // behavior
        auto name = expect_name("behavior name");
        decl.name = name.text;
        decl.name_span = name.span;
        if (at(TokenKind::KwExtends)) {
            take();
            auto parent = expect_name("parent behavior name");
            decl.extends = parent.text;
            decl.extends_span = parent.span;
        }
        if (at(TokenKind::LBrace)) decl.refinements = parse_refinement_block();
        return decl;
    }

    RefineBlock parse_refine() {
        RefineBlock block;
        block.span = take().span;  // refine
        auto name = expect_name("behavior name");
        block.target = name.text;
        block.name_span = name.span;
        block.refinements = parse_refinement_block();
        return block;
    }

    TraitDecl parse_trait() {
        TraitDecl decl;
        decl.span = take().span;  // trait
        auto name = expect_plain_name("trait name");
        decl.name = name.text;
        decl.name_span = name.span;
        expect(TokenKind::LBrace, "\"{\"");
        while (!at(TokenKind::RBrace)) {
            if (at(TokenKind::End)) error("unterminated trait, expected \"}\"");
            if (is_decl_keyword(current().kind)) {
                diagnostics_.push_back(Diagnostic{Severity::Error, "SyntaxError",
                                                  "missing \"}\" before next declaration",
                                                  current().span});
                return decl;
            }
            auto key = expect_plain_name("trait step name");
            expect(TokenKind::Colon, "\":\"");
            TraitEntry entry;
            entry.key = key.text;
            entry.span = key.span;
            if (at(TokenKind::KwNull)) {
                auto null_token = take();
                entry.span.end = null_token.span.end;
            } else {
                auto value = expect_plain_name("replacement name or null");
                entry.replacement = value.text;
                entry.span.end = value.span.end;
            }
            decl.entries.push_back(std::move(entry));
        }
        take();  // }
        return decl;
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::vector<Diagnostic> diagnostics_;
};

}  // namespace

ParseResult parse(std::string_view source) { return Parser(source).run(); }

}  // namespace selfc::bdl
