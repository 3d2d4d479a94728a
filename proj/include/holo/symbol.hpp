#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace holo {

// Interned identifier. Comparison order is the name's byte order, so canonical
// forms do not depend on interning order; the registry is append-only and
// guarded for concurrent use.
class Symbol {
  public:
    Symbol() : id_(-1) {}
    explicit Symbol(const std::string& name) : id_(intern(name)) {}

    const std::string& name() const { return table().names[id_]; }
    bool valid() const { return id_ >= 0; }
    int id() const { return id_; }

    bool operator==(const Symbol& o) const { return id_ == o.id_; }
    bool operator!=(const Symbol& o) const { return id_ != o.id_; }
    bool operator<(const Symbol& o) const { return name() < o.name(); }
    bool operator>(const Symbol& o) const { return o < *this; }
    bool operator<=(const Symbol& o) const { return !(o < *this); }

  private:
    struct Table {
        std::mutex mu;
        std::map<std::string, int> ids;
        std::vector<std::string> names;
    };
    static Table& table() {
        static Table t;
        return t;
    }
    static int intern(const std::string& name) {
        Table& t = table();
        std::lock_guard<std::mutex> lock(t.mu);
        auto it = t.ids.find(name);
        if (it != t.ids.end()) return it->second;
        int id = static_cast<int>(t.names.size());
        t.names.push_back(name);
        t.ids.emplace(name, id);
        return id;
    }

    int id_;
};

inline Symbol sym(const std::string& name) { return Symbol(name); }

}  // namespace holo
