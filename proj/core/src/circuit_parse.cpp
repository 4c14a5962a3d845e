#include <cctype>
#include <sstream>

#include "oblab/circuit.hpp"
#include "oblab/errors.hpp"

namespace oblab {

namespace {

struct Token {
    enum Kind { Word, Number, Semi, Equals, Comma, End } kind;
    std::string text;
    uint64_t value = 0;
    int line = 1;
    int col = 1;
};

class Lexer {
  public:
    explicit Lexer(const std::string& text) : text_(text) {}

    Token next() {
        skip_ws();
        Token t;
        t.line = line_;
        t.col = col_;
        if (pos_ >= text_.size()) {
            t.kind = Token::End;
            return t;
        }
        char c = text_[pos_];
        if (c == ';') { advance(); t.kind = Token::Semi; return t; }
        if (c == '=') { advance(); t.kind = Token::Equals; return t; }
        if (c == ',') { advance(); t.kind = Token::Comma; return t; }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            t.kind = Token::Number;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                t.text.push_back(text_[pos_]);
                advance();
            }
            t.value = std::stoull(t.text);
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            t.kind = Token::Word;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                t.text.push_back(text_[pos_]);
                advance();
            }
            return t;
        }
        throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
    }

  private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    const std::string& text_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
  public:
    explicit Parser(const std::string& text) : lexer_(text) { bump(); }

    Circuit run() {
        Circuit c;
        expect_word("in");
        c.num_inputs = static_cast<uint32_t>(expect_number());
        expect(Token::Semi);
        expect_word("out");
        c.num_outputs = static_cast<uint32_t>(expect_number());
        expect(Token::Semi);

        while (cur_.kind == Token::Word && cur_.text[0] == 'g' && peek_is_gate_def()) {
            parse_gate(c);
        }

        expect_word("return");
        for (;;) {
            c.output_wires.push_back(parse_wire_ref(c, c.gates.size()));
            if (cur_.kind == Token::Comma) {
                bump();
                continue;
            }
            break;
        }
        expect(Token::Semi);
        if (cur_.kind != Token::End)
            throw ParseError(cur_.line, cur_.col, "trailing input after return statement");
        if (c.output_wires.size() != c.num_outputs)
            throw ParseError(cur_.line, cur_.col,
                             "returned " + std::to_string(c.output_wires.size()) +
                                 " wires but 'out' declares " + std::to_string(c.num_outputs));
        c.declared_size = c.gates.size();
        return c;
    }

  private:
    void bump() { cur_ = lexer_.next(); }

    void expect(Token::Kind kind) {
        if (cur_.kind != kind) {
            static const char* names[] = {"identifier", "number", "';'", "'='", "','", "end of input"};
            throw ParseError(cur_.line, cur_.col, std::string("expected ") + names[kind]);
        }
        bump();
    }

    void expect_word(const std::string& w) {
        if (cur_.kind != Token::Word || cur_.text != w)
            throw ParseError(cur_.line, cur_.col, "expected '" + w + "'");
        bump();
    }

    uint64_t expect_number() {
        if (cur_.kind != Token::Number)
            throw ParseError(cur_.line, cur_.col, "expected a number");
        uint64_t v = cur_.value;
        bump();
        return v;
    }

    bool peek_is_gate_def() const { return cur_.text != "return"; }

    // Accepts x<j> / g<j> and maps to a wire index valid before gate `upto`.
    uint32_t parse_wire_ref(const Circuit& c, size_t upto) {
        if (cur_.kind != Token::Word || cur_.text.size() < 2 ||
            (cur_.text[0] != 'x' && cur_.text[0] != 'g'))
            throw ParseError(cur_.line, cur_.col, "expected an operand like x0 or g0");
        const Token t = cur_;
        uint64_t idx = 0;
        for (size_t i = 1; i < t.text.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(t.text[i])))
                throw ParseError(t.line, t.col, "malformed operand '" + t.text + "'");
            idx = idx * 10 + static_cast<uint64_t>(t.text[i] - '0');
        }
        bump();
        if (t.text[0] == 'x') {
            if (idx >= c.num_inputs)
                throw ParseError(t.line, t.col,
                                 "input x" + std::to_string(idx) + " out of range for 'in " +
                                     std::to_string(c.num_inputs) + "'");
            return static_cast<uint32_t>(idx);
        }
        if (idx >= upto)
            throw ParseError(t.line, t.col,
                             "gate g" + std::to_string(idx) + " is not defined yet here");
        return c.num_inputs + static_cast<uint32_t>(idx);
    }

    void parse_gate(Circuit& c) {
        const Token name = cur_;
        uint64_t idx = 0;
        for (size_t i = 1; i < name.text.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(name.text[i])))
                throw ParseError(name.line, name.col, "malformed gate name '" + name.text + "'");
            idx = idx * 10 + static_cast<uint64_t>(name.text[i] - '0');
        }
        if (name.text.size() < 2 || idx != c.gates.size())
            throw ParseError(name.line, name.col,
                             "gate must be named g" + std::to_string(c.gates.size()) +
                                 " at this position");
        bump();
        expect(Token::Equals);
        if (cur_.kind != Token::Word)
            throw ParseError(cur_.line, cur_.col, "expected a gate op");
        Gate g;
        const Token op = cur_;
        if (op.text == "AND") g.op = GateOp::And;
        else if (op.text == "OR") g.op = GateOp::Or;
        else if (op.text == "XOR") g.op = GateOp::Xor;
        else if (op.text == "NOT") g.op = GateOp::Not;
        else if (op.text == "CONST0") g.op = GateOp::Const0;
        else if (op.text == "CONST1") g.op = GateOp::Const1;
        else throw ParseError(op.line, op.col, "unknown gate op '" + op.text + "'");
        bump();
        const int arity = gate_arity(g.op);
        if (arity >= 1) g.a = parse_wire_ref(c, c.gates.size());
        if (arity >= 2) g.b = parse_wire_ref(c, c.gates.size());
        expect(Token::Semi);
        c.gates.push_back(g);
    }

    Lexer lexer_;
    Token cur_;
};

std::string wire_name(const Circuit& c, uint32_t w) {
    if (w < c.num_inputs) return "x" + std::to_string(w);
    return "g" + std::to_string(w - c.num_inputs);
}

}  // namespace

Circuit parse_circuit(const std::string& text) {
    Circuit c = Parser(text).run();
    c.validate();
    return c;
}

std::string print_circuit(const Circuit& c) {
    std::ostringstream out;
    out << "in " << c.num_inputs << "; out " << c.num_outputs << ";\n";
    for (size_t j = 0; j < c.gates.size(); ++j) {
        const Gate& g = c.gates[j];
        out << "g" << j << " = " << gate_op_name(g.op);
        const int arity = gate_arity(g.op);
        if (arity >= 1) out << " " << wire_name(c, g.a);
        if (arity >= 2) out << " " << wire_name(c, g.b);
        out << ";\n";
    }
    out << "return";
    for (size_t j = 0; j < c.output_wires.size(); ++j) {
        out << (j ? ", " : " ") << wire_name(c, c.output_wires[j]);
    }
    out << ";\n";
    return out.str();
}

}  // namespace oblab
