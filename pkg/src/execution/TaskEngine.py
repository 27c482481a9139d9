import asyncio
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, List, Sequence, Tuple

from ..core.errors.Errors import SrdError
from .ExecutionTask import ExecutionTask


class TaskEngine:
    """
    asyncio 队列加命名工作器；计算在线程池中执行，结果按任务下标合并，
    因此输出与调度顺序无关。
    """

    def __init__(self, worker_count: int = 1, max_retries: int = 0):
        self.worker_count = max(1, int(worker_count))
        self.max_retries = max_retries
        self.logger = logging.getLogger(__name__)

    async def map(self, fn: Callable[[Any], Any], payloads: Sequence[Any], label: str = "task") -> List[Any]:
        """对每个 payload 执行 fn，按输入顺序返回结果"""
        payloads = list(payloads)
        if not payloads:
            return []
        queue: asyncio.Queue = asyncio.Queue()
        for i, payload in enumerate(payloads):
            await queue.put(ExecutionTask(index=i, payload=payload, label=f"{label}-{i}"))

        results: List[Any] = [None] * len(payloads)
        failures: List[Tuple[int, BaseException]] = []
        executor = ThreadPoolExecutor(max_workers=self.worker_count)
        workers = [
            asyncio.create_task(self._worker(f"worker-{k}", queue, fn, results, failures, executor))
            for k in range(min(self.worker_count, len(payloads)))
        ]
        try:
            await queue.join()
        finally:
            for worker in workers:
                worker.cancel()
            await asyncio.gather(*workers, return_exceptions=True)
            executor.shutdown(wait=True)

        if failures:
            index, error = min(failures, key=lambda f: f[0])
            self.logger.error(f"{len(failures)} {label} tasks failed, first at index {index}")
            raise error
        return results

    async def _worker(self, worker_name: str, queue: asyncio.Queue, fn: Callable[[Any], Any],
                      results: List[Any], failures: List[Tuple[int, BaseException]],
                      executor: ThreadPoolExecutor) -> None:
        """工作器"""
        loop = asyncio.get_running_loop()
        while True:
            task = await queue.get()
            try:
                results[task.index] = await loop.run_in_executor(executor, fn, task.payload)
                latency = time.time() - task.created_time
                self.logger.debug(f"{worker_name} finished {task.label} in {latency:.3f}s "
                                  f"(retries={task.retry_count})")
            except SrdError as e:
                # 校验类错误重试无意义
                failures.append((task.index, e))
            except Exception as e:
                self.logger.error(f"Worker {worker_name} task {task.label} failed: {e}")
                if task.retry_count < self.max_retries:
                    task.retry_count += 1
                    await queue.put(task)
                else:
                    failures.append((task.index, e))
            finally:
                queue.task_done()

    def map_sync(self, fn: Callable[[Any], Any], payloads: Sequence[Any], label: str = "task") -> List[Any]:
        """同步入口；单工作器时直接顺序执行"""
        if self.worker_count == 1:
            return [fn(p) for p in payloads]
        return asyncio.run(self.map(fn, payloads, label))
