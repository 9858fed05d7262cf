#pragma once

// Per-thread free lists for the small shared nodes that the evaluators and
// the arrangement search churn through (values, shape trees, terms).
//
// Nodes are routinely released on a different thread from the one that
// built them (see with_large_stack), so a freed block simply joins the
// releasing thread's list. Each list drains back to the heap when its thread
// exits; frees arriving after that go straight to the heap.

#include <cstddef>
#include <memory>
#include <new>
#include <utility>

namespace garrow::detail {

template <std::size_t Size>
class FreeList {
 public:
  static void* take() {
    if (head_) {
      Block* b = head_;
      head_ = b->next;
      --count_;
      return b;
    }
    owner_.touch();
    return ::operator new(Size);
  }

  static void give(void* p) {
    if (closed_ || count_ >= kMaxCached) {
      ::operator delete(p);
      return;
    }
    owner_.touch();
    auto* b = static_cast<Block*>(p);
    b->next = head_;
    head_ = b;
    ++count_;
  }

 private:
  struct Block {
    Block* next;
  };
  static_assert(Size >= sizeof(Block));

  static constexpr std::size_t kMaxCached = (std::size_t{1} << 20) / Size;

  struct Owner {
    Owner() { closed_ = false; }
    ~Owner() {
      closed_ = true;
      while (head_) {
        Block* next = head_->next;
        ::operator delete(head_);
        head_ = next;
      }
      count_ = 0;
    }
    void touch() {}
  };

  static inline thread_local Block* head_ = nullptr;
  static inline thread_local std::size_t count_ = 0;
  static inline thread_local bool closed_ = false;
  static inline thread_local Owner owner_;
};

constexpr std::size_t size_class(std::size_t n) { return (n + 15) / 16 * 16; }

template <class T>
struct PoolAllocator {
  using value_type = T;

  PoolAllocator() = default;
  template <class U>
  PoolAllocator(const PoolAllocator<U>&) {}

  T* allocate(std::size_t n) {
    if (n != 1) return static_cast<T*>(::operator new(n * sizeof(T)));
    return static_cast<T*>(FreeList<size_class(sizeof(T))>::take());
  }

  void deallocate(T* p, std::size_t n) {
    if (n != 1) {
      ::operator delete(p);
      return;
    }
    FreeList<size_class(sizeof(T))>::give(p);
  }

  template <class U>
  bool operator==(const PoolAllocator<U>&) const {
    return true;
  }
};

template <class T, class... Args>
std::shared_ptr<T> make_pooled(Args&&... args) {
  return std::allocate_shared<T>(PoolAllocator<T>{}, std::forward<Args>(args)...);
}

}  // namespace garrow::detail
