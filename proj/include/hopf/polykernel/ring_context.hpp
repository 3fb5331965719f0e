#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace hopf {

enum class VarClass : std::uint8_t { BaseX = 0, BaseY = 1, SectionVar = 2 };

struct VariableId {
    VarClass cls = VarClass::SectionVar;
    int index = 0;
    std::string tag;

    friend bool operator==(const VariableId&, const VariableId&) = default;
    friend bool operator<(const VariableId& a, const VariableId& b) {
        return std::tie(a.cls, a.index, a.tag) < std::tie(b.cls, b.index, b.tag);
    }

    [[nodiscard]] bool is_base() const { return cls != VarClass::SectionVar; }
    [[nodiscard]] std::string name() const {
        switch (cls) {
            case VarClass::BaseX: return "x" + std::to_string(index);
            case VarClass::BaseY: return "y" + std::to_string(index);
            default: return tag + std::to_string(index);
        }
    }
};

inline VariableId base_x(int i) { return {VarClass::BaseX, i, ""}; }
inline VariableId base_y(int i) { return {VarClass::BaseY, i, ""}; }
inline VariableId section_var(std::string tag, int i) { return {VarClass::SectionVar, i, std::move(tag)}; }

/// Dense handle of a variable inside one frozen ring context.
using VarHandle = std::uint8_t;

/// Immutable set of indeterminates. Handles follow the (class, index, tag)
/// order, so the graded order on monomials is the same for every polynomial
/// built over this context.
class RingContext {
public:
    static constexpr std::size_t kMaxVariables = 255;

    [[nodiscard]] std::size_t size() const { return vars_.size(); }
    [[nodiscard]] const VariableId& variable(VarHandle h) const { return vars_.at(h); }

    [[nodiscard]] std::optional<VarHandle> find(const VariableId& v) const {
        auto it = lookup_.find(v);
        if (it == lookup_.end()) return std::nullopt;
        return it->second;
    }
    [[nodiscard]] VarHandle handle(const VariableId& v) const {
        auto h = find(v);
        if (!h) throw std::out_of_range("RingContext: unknown variable " + v.name());
        return *h;
    }
    [[nodiscard]] bool has_base() const {
        return std::any_of(vars_.begin(), vars_.end(), [](const VariableId& v) { return v.is_base(); });
    }

private:
    friend class RingBuilder;
    std::vector<VariableId> vars_;
    std::map<VariableId, VarHandle> lookup_;
};

using RingPtr = std::shared_ptr<const RingContext>;

class RingBuilder {
public:
    RingBuilder& add(const VariableId& v) {
        if ((v.cls == VarClass::BaseX || v.cls == VarClass::BaseY) && (v.index < 0 || v.index > 7))
            throw std::invalid_argument("RingBuilder: base coordinate index out of range");
        pending_.push_back(v);
        return *this;
    }
    RingBuilder& add_base(int dim = 8) {
        for (int i = 0; i < dim; ++i) add(base_x(i));
        for (int i = 0; i < dim; ++i) add(base_y(i));
        return *this;
    }
    RingBuilder& add_section(const std::string& tag, int count) {
        for (int i = 0; i < count; ++i) add(section_var(tag, i));
        return *this;
    }

    [[nodiscard]] RingPtr build() const {
        std::vector<VariableId> vs = pending_;
        std::sort(vs.begin(), vs.end());
        if (std::adjacent_find(vs.begin(), vs.end()) != vs.end())
            throw std::invalid_argument("RingBuilder: duplicate variable");
        if (vs.size() > RingContext::kMaxVariables) throw std::length_error("RingBuilder: too many variables");
        auto ctx = std::make_shared<RingContext>();
        ctx->vars_ = vs;
        for (std::size_t i = 0; i < vs.size(); ++i) ctx->lookup_.emplace(vs[i], static_cast<VarHandle>(i));
        return ctx;
    }

private:
    std::vector<VariableId> pending_;
};

}  // namespace hopf
